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

#ifndef BEAMCTL_NUMERICS_HPP
#define BEAMCTL_NUMERICS_HPP

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace beamctl
{
    using cplx = std::complex<double>;

    // Dense complex column vector.
    class CVector
    {
    public:
        CVector() = default;
        explicit CVector(std::size_t n, cplx fill = {0.0, 0.0}) : data_(n, fill) {}
        CVector(std::initializer_list<cplx> values) : data_(values) {}
        explicit CVector(std::vector<cplx> values) : data_(std::move(values)) {}

        std::size_t size() const noexcept { return data_.size(); }
        cplx &operator[](std::size_t i) { return data_[i]; }
        const cplx &operator[](std::size_t i) const { return data_[i]; }

        std::span<cplx> span() noexcept { return data_; }
        std::span<const cplx> span() const noexcept { return data_; }
        const std::vector<cplx> &values() const noexcept { return data_; }

        auto begin() noexcept { return data_.begin(); }
        auto end() noexcept { return data_.end(); }
        auto begin() const noexcept { return data_.begin(); }
        auto end() const noexcept { return data_.end(); }

        CVector &operator+=(const CVector &other);
        CVector &operator-=(const CVector &other);
        CVector &operator*=(cplx s);

        bool operator==(const CVector &) const = default;

    private:
        std::vector<cplx> data_;
    };

    CVector operator+(CVector a, const CVector &b);
    CVector operator-(CVector a, const CVector &b);
    CVector operator*(cplx s, CVector a);

    // Dense complex matrix, row-major, entry (i, l) = row i, column l.
    class CMatrix
    {
    public:
        CMatrix() = default;
        CMatrix(std::size_t rows, std::size_t cols, cplx fill = {0.0, 0.0})
            : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
        CMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

        static CMatrix identity(std::size_t n);
        static CMatrix diagonal(std::span<const cplx> diag);
        // Columns given as vectors of equal length.
        static CMatrix from_columns(std::span<const CVector> columns);

        std::size_t rows() const noexcept { return rows_; }
        std::size_t cols() const noexcept { return cols_; }
        bool is_square() const noexcept { return rows_ == cols_; }

        cplx &operator()(std::size_t i, std::size_t l) { return data_[i * cols_ + l]; }
        const cplx &operator()(std::size_t i, std::size_t l) const { return data_[i * cols_ + l]; }

        CVector column(std::size_t l) const;

        CMatrix &operator+=(const CMatrix &other);
        CMatrix &operator-=(const CMatrix &other);

        bool operator==(const CMatrix &) const = default;

    private:
        std::size_t rows_ = 0;
        std::size_t cols_ = 0;
        std::vector<cplx> data_;
    };

    CMatrix operator+(CMatrix a, const CMatrix &b);
    CMatrix operator-(CMatrix a, const CMatrix &b);
    CMatrix operator*(const CMatrix &a, const CMatrix &b);
    CVector operator*(const CMatrix &m, const CVector &x);
    CMatrix operator*(cplx s, CMatrix m);

    CMatrix adjoint(const CMatrix &m);
    CMatrix outer(const CVector &x, const CVector &y); // x y^H

    cplx dot(const CVector &x, const CVector &y); // x^H y
    double norm2(const CVector &x);               // ||x||_2
    double squared_norm(const CVector &x);
    double max_abs(const CMatrix &m);
    double max_abs(const CVector &x);
    bool all_finite(const CVector &x);
    bool all_finite(const CMatrix &m);

    // x^H M y
    cplx quad_form(const CMatrix &m, const CVector &x, const CVector &y);

    // Minv + scale * u u^H. The name reflects its use on inverse covariance
    // matrices; no inversion happens here.
    CMatrix rank1_inverse_update(const CMatrix &m_inv, const CVector &u, cplx scale);

    // Partial-pivot Gauss-Jordan inverse. Throws Singular when a pivot falls
    // below 1e-14 * ||M||_max.
    CMatrix invert(const CMatrix &m);

    // Solves M x = b with partial-pivot LU.
    CVector solve(const CMatrix &m, const CVector &b);

    // max_{i,l} |M(i,l) - conj(M(l,i))|
    double hermitian_defect(const CMatrix &m);

    // LDL^H without pivoting; true iff every pivot exceeds 1e-12 * ||M||_max.
    // Throws NotHermitian when the defect exceeds 1e-10 * max(1, ||M||_max).
    bool is_positive_definite(const CMatrix &m);
}

#endif
