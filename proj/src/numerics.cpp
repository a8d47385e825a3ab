// SPDX-License-Identifier: Apache-2.0
//
// beamctl - sequential array response control
// Copyright (C) 2026 The beamctl authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "beamctl/numerics.hpp"
#include "beamctl/error.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace beamctl
{
    namespace
    {
        void require_same_size(std::size_t a, std::size_t b, const char *what)
        {
            if (a != b)
                fail(ErrorKind::DimensionMismatch,
                     std::string(what) + ": size " + std::to_string(a) + " vs " + std::to_string(b));
        }

        void require_square(const CMatrix &m, const char *what)
        {
            if (!m.is_square())
                fail(ErrorKind::DimensionMismatch,
                     std::string(what) + ": matrix is " + std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
        }

        // In-place LU with partial pivoting; returns the row permutation.
        std::vector<std::size_t> lu_decompose(CMatrix &a, const char *what)
        {
            const std::size_t n = a.rows();
            const double tol = 1e-14 * max_abs(a);
            std::vector<std::size_t> perm(n);
            for (std::size_t i = 0; i < n; ++i)
                perm[i] = i;

            for (std::size_t k = 0; k < n; ++k)
            {
                std::size_t p = k;
                double best = std::abs(a(k, k));
                for (std::size_t i = k + 1; i < n; ++i)
                    if (std::abs(a(i, k)) > best)
                    {
                        best = std::abs(a(i, k));
                        p = i;
                    }
                if (!(best > tol))
                    fail(ErrorKind::Singular, std::string(what) + ": matrix is singular to tolerance");
                if (p != k)
                {
                    for (std::size_t l = 0; l < n; ++l)
                        std::swap(a(k, l), a(p, l));
                    std::swap(perm[k], perm[p]);
                }
                for (std::size_t i = k + 1; i < n; ++i)
                {
                    const cplx f = a(i, k) / a(k, k);
                    a(i, k) = f;
                    for (std::size_t l = k + 1; l < n; ++l)
                        a(i, l) -= f * a(k, l);
                }
            }
            return perm;
        }

        CVector lu_solve(const CMatrix &lu, const std::vector<std::size_t> &perm, const CVector &b)
        {
            const std::size_t n = lu.rows();
            CVector x(n);
            for (std::size_t i = 0; i < n; ++i)
            {
                cplx s = b[perm[i]];
                for (std::size_t l = 0; l < i; ++l)
                    s -= lu(i, l) * x[l];
                x[i] = s;
            }
            for (std::size_t i = n; i-- > 0;)
            {
                cplx s = x[i];
                for (std::size_t l = i + 1; l < n; ++l)
                    s -= lu(i, l) * x[l];
                x[i] = s / lu(i, i);
            }
            return x;
        }
    }

    CVector &CVector::operator+=(const CVector &other)
    {
        require_same_size(size(), other.size(), "CVector +=");
        for (std::size_t i = 0; i < data_.size(); ++i)
            data_[i] += other.data_[i];
        return *this;
    }

    CVector &CVector::operator-=(const CVector &other)
    {
        require_same_size(size(), other.size(), "CVector -=");
        for (std::size_t i = 0; i < data_.size(); ++i)
            data_[i] -= other.data_[i];
        return *this;
    }

    CVector &CVector::operator*=(cplx s)
    {
        for (auto &v : data_)
            v *= s;
        return *this;
    }

    CVector operator+(CVector a, const CVector &b) { return a += b; }
    CVector operator-(CVector a, const CVector &b) { return a -= b; }
    CVector operator*(cplx s, CVector a) { return a *= s; }

    CMatrix::CMatrix(std::initializer_list<std::initializer_list<cplx>> rows)
    {
        rows_ = rows.size();
        cols_ = rows_ == 0 ? 0 : rows.begin()->size();
        data_.reserve(rows_ * cols_);
        for (const auto &row : rows)
        {
            require_same_size(row.size(), cols_, "CMatrix row");
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    CMatrix CMatrix::identity(std::size_t n)
    {
        CMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = 1.0;
        return m;
    }

    CMatrix CMatrix::diagonal(std::span<const cplx> diag)
    {
        CMatrix m(diag.size(), diag.size());
        for (std::size_t i = 0; i < diag.size(); ++i)
            m(i, i) = diag[i];
        return m;
    }

    CMatrix CMatrix::from_columns(std::span<const CVector> columns)
    {
        if (columns.empty())
            return {};
        const std::size_t n = columns.front().size();
        CMatrix m(n, columns.size());
        for (std::size_t l = 0; l < columns.size(); ++l)
        {
            require_same_size(columns[l].size(), n, "CMatrix::from_columns");
            for (std::size_t i = 0; i < n; ++i)
                m(i, l) = columns[l][i];
        }
        return m;
    }

    CVector CMatrix::column(std::size_t l) const
    {
        CVector c(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            c[i] = (*this)(i, l);
        return c;
    }

    CMatrix &CMatrix::operator+=(const CMatrix &other)
    {
        require_same_size(rows_, other.rows_, "CMatrix += rows");
        require_same_size(cols_, other.cols_, "CMatrix += cols");
        for (std::size_t i = 0; i < data_.size(); ++i)
            data_[i] += other.data_[i];
        return *this;
    }

    CMatrix &CMatrix::operator-=(const CMatrix &other)
    {
        require_same_size(rows_, other.rows_, "CMatrix -= rows");
        require_same_size(cols_, other.cols_, "CMatrix -= cols");
        for (std::size_t i = 0; i < data_.size(); ++i)
            data_[i] -= other.data_[i];
        return *this;
    }

    CMatrix operator+(CMatrix a, const CMatrix &b) { return a += b; }
    CMatrix operator-(CMatrix a, const CMatrix &b) { return a -= b; }

    CMatrix operator*(const CMatrix &a, const CMatrix &b)
    {
        require_same_size(a.cols(), b.rows(), "CMatrix * CMatrix");
        CMatrix c(a.rows(), b.cols());
        for (std::size_t i = 0; i < a.rows(); ++i)
            for (std::size_t k = 0; k < a.cols(); ++k)
            {
                const cplx aik = a(i, k);
                for (std::size_t l = 0; l < b.cols(); ++l)
                    c(i, l) += aik * b(k, l);
            }
        return c;
    }

    CVector operator*(const CMatrix &m, const CVector &x)
    {
        require_same_size(m.cols(), x.size(), "CMatrix * CVector");
        CVector y(m.rows());
        for (std::size_t i = 0; i < m.rows(); ++i)
        {
            cplx s = 0.0;
            for (std::size_t l = 0; l < m.cols(); ++l)
                s += m(i, l) * x[l];
            y[i] = s;
        }
        return y;
    }

    CMatrix operator*(cplx s, CMatrix m)
    {
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t l = 0; l < m.cols(); ++l)
                m(i, l) *= s;
        return m;
    }

    CMatrix adjoint(const CMatrix &m)
    {
        CMatrix h(m.cols(), m.rows());
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t l = 0; l < m.cols(); ++l)
                h(l, i) = std::conj(m(i, l));
        return h;
    }

    CMatrix outer(const CVector &x, const CVector &y)
    {
        CMatrix m(x.size(), y.size());
        for (std::size_t i = 0; i < x.size(); ++i)
            for (std::size_t l = 0; l < y.size(); ++l)
                m(i, l) = x[i] * std::conj(y[l]);
        return m;
    }

    cplx dot(const CVector &x, const CVector &y)
    {
        require_same_size(x.size(), y.size(), "dot");
        cplx s = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i)
            s += std::conj(x[i]) * y[i];
        return s;
    }

    double squared_norm(const CVector &x)
    {
        double s = 0.0;
        for (const auto &v : x)
            s += std::norm(v);
        return s;
    }

    double norm2(const CVector &x) { return std::sqrt(squared_norm(x)); }

    double max_abs(const CMatrix &m)
    {
        double best = 0.0;
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t l = 0; l < m.cols(); ++l)
                best = std::max(best, std::abs(m(i, l)));
        return best;
    }

    double max_abs(const CVector &x)
    {
        double best = 0.0;
        for (const auto &v : x)
            best = std::max(best, std::abs(v));
        return best;
    }

    bool all_finite(const CVector &x)
    {
        return std::all_of(x.begin(), x.end(), [](const cplx &v)
                           { return std::isfinite(v.real()) && std::isfinite(v.imag()); });
    }

    bool all_finite(const CMatrix &m)
    {
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t l = 0; l < m.cols(); ++l)
                if (!std::isfinite(m(i, l).real()) || !std::isfinite(m(i, l).imag()))
                    return false;
        return true;
    }

    cplx quad_form(const CMatrix &m, const CVector &x, const CVector &y)
    {
        require_same_size(m.rows(), x.size(), "quad_form rows");
        require_same_size(m.cols(), y.size(), "quad_form cols");
        return dot(x, m * y);
    }

    CMatrix rank1_inverse_update(const CMatrix &m_inv, const CVector &u, cplx scale)
    {
        require_square(m_inv, "rank1_inverse_update");
        require_same_size(m_inv.rows(), u.size(), "rank1_inverse_update");
        if (!std::isfinite(scale.real()) || !std::isfinite(scale.imag()))
            fail(ErrorKind::NonFinite, "rank1_inverse_update: non-finite scale");
        CMatrix out = m_inv;
        for (std::size_t i = 0; i < u.size(); ++i)
        {
            const cplx su = scale * u[i];
            for (std::size_t l = 0; l < u.size(); ++l)
                out(i, l) += su * std::conj(u[l]);
        }
        return out;
    }

    CMatrix invert(const CMatrix &m)
    {
        require_square(m, "invert");
        CMatrix lu = m;
        const auto perm = lu_decompose(lu, "invert");
        const std::size_t n = m.rows();
        CMatrix inv(n, n);
        CVector e(n);
        for (std::size_t l = 0; l < n; ++l)
        {
            std::fill(e.begin(), e.end(), cplx{0.0, 0.0});
            e[l] = 1.0;
            const CVector x = lu_solve(lu, perm, e);
            for (std::size_t i = 0; i < n; ++i)
                inv(i, l) = x[i];
        }
        return inv;
    }

    CVector solve(const CMatrix &m, const CVector &b)
    {
        require_square(m, "solve");
        require_same_size(m.rows(), b.size(), "solve");
        CMatrix lu = m;
        const auto perm = lu_decompose(lu, "solve");
        return lu_solve(lu, perm, b);
    }

    double hermitian_defect(const CMatrix &m)
    {
        require_square(m, "hermitian_defect");
        double d = 0.0;
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t l = i; l < m.cols(); ++l)
                d = std::max(d, std::abs(m(i, l) - std::conj(m(l, i))));
        return d;
    }

    bool is_positive_definite(const CMatrix &m)
    {
        require_square(m, "is_positive_definite");
        const double scale = max_abs(m);
        if (hermitian_defect(m) > 1e-10 * std::max(1.0, scale))
            fail(ErrorKind::NotHermitian, "is_positive_definite: input is not Hermitian");
        const std::size_t n = m.rows();
        const double tol = 1e-12 * scale;

        // Hermitian Gaussian elimination; a positive-definite matrix never needs pivoting.
        CMatrix a = m;
        for (std::size_t k = 0; k < n; ++k)
        {
            const double pivot = a(k, k).real();
            if (!(pivot > tol))
                return false;
            for (std::size_t i = k + 1; i < n; ++i)
            {
                const cplx f = a(i, k) / pivot;
                for (std::size_t l = k + 1; l < n; ++l)
                    a(i, l) -= f * a(k, l);
            }
        }
        return true;
    }
}
