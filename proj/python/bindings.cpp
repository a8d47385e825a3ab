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

// beamctl._core: thin pybind11 layer. Structured results cross as JSON text in the
// same shape the HTTP service sends; the package turns them into dicts.

#include "beamctl/array_model.hpp"
#include "beamctl/error.hpp"
#include "beamctl/experiment.hpp"
#include "beamctl/service.hpp"
#include "beamctl/session.hpp"

#include "json_io.hpp"
#include "wire.hpp"

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>

namespace py = pybind11;
using namespace beamctl;
using nlohmann::json;

namespace
{
    ArrayModel array_from(const std::string &name)
    {
        if (is_bundled_array(name))
            return bundled_array(name);
        json doc;
        try
        {
            doc = json::parse(name);
        }
        catch (const json::exception &)
        {
            fail(ErrorKind::NotFound, "no bundled array named '" + name + "'");
        }
        return detail::resolve_array(doc);
    }

    std::string pattern_text(const Session &s, double from, double to, double step)
    {
        const GridSpec grid{from, to, step};
        return detail::pattern_to_json(s.pattern(grid), s.theta0().deg(), s.method(), s.step_count()).dump();
    }
}

PYBIND11_MODULE(_core, m)
{
    m.doc() = "beamctl engine bindings";

    py::register_exception<Error>(m, "Error", PyExc_RuntimeError);

    m.def("bundled_array_json", [](const std::string &name) { return bundled_array_json(name); }, py::arg("name"));

    m.def(
        "steering_vector",
        [](double theta_deg, const std::string &array)
        {
            const CVector a = steering_vector(array_from(array), Angle::from_deg(theta_deg));
            return std::vector<cplx>(a.begin(), a.end());
        },
        py::arg("theta_deg"), py::arg("array") = "nla11");

    m.def(
        "run_experiment", [](const std::string &config) { return summary_json(run_experiment(parse_experiment_config(config))); },
        py::arg("config_json"));

    m.def(
        "run_sweep", [](const std::string &config, unsigned threads) { return sweep_csv(run_sweep(parse_experiment_config(config), threads)); },
        py::arg("config_json"), py::arg("threads") = 1);

    py::class_<Session>(m, "Session")
        .def(py::init([](double theta0_deg, const std::string &method, const std::string &array)
                      { return Session(array_from(array), Angle::from_deg(theta0_deg), method_from_string(method)); }),
             py::arg("theta0_deg"), py::arg("method") = "oparc", py::arg("array") = "nla11")
        .def(
            "step", [](Session &s, double theta_deg, double rho_db) { return detail::step_to_json(s.step({theta_deg, rho_db})).dump(); },
            py::arg("theta_deg"), py::arg("rho_db"))
        .def("undo", &Session::undo)
        .def_property_readonly("step_count", &Session::step_count)
        .def_property_readonly("method", [](const Session &s) { return std::string(to_string(s.method())); })
        .def_property_readonly("gain_linear", &Session::gain_linear)
        .def_property_readonly("weight", [](const Session &s)
                               { return std::vector<cplx>(s.weight().begin(), s.weight().end()); })
        .def("pattern", &pattern_text, py::arg("from_deg") = -90.0, py::arg("to_deg") = 90.0, py::arg("step_deg") = 0.2);

    py::class_<SessionService>(m, "Service")
        .def(py::init([](std::optional<std::string> persist_dir)
                      {
                          std::optional<std::filesystem::path> dir;
                          if (persist_dir)
                              dir = *persist_dir;
                          return std::make_unique<SessionService>(dir);
                      }),
             py::arg("persist_dir") = py::none())
        .def(
            "handle",
            [](SessionService &svc, const std::string &method, const std::string &path,
               const std::map<std::string, std::string> &query, const std::string &body)
            {
                HttpReply r;
                {
                    py::gil_scoped_release release;
                    r = svc.handle(method, path, query, body);
                }
                return py::make_tuple(r.status, r.body);
            },
            py::arg("method"), py::arg("path"), py::arg("query") = std::map<std::string, std::string>{},
            py::arg("body") = "")
        .def_property_readonly("session_count", &SessionService::session_count);
}
