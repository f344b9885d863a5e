// Copyright 2026 The csa-measure Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "csa/decomposition.hpp"
#include "csa/errors.hpp"
#include "csa/fermion.hpp"
#include "csa/fock_sector.hpp"
#include "csa/grouping.hpp"
#include "csa/io.hpp"
#include "csa/pauli.hpp"
#include "csa/pauli_text.hpp"
#include "csa/pipeline.hpp"
#include "csa/statevec.hpp"

namespace py = pybind11;

namespace {

using Amplitudes = py::array_t<std::complex<double>, py::array::c_style | py::array::forcecast>;

csa::Wavefunction to_wavefunction(int n_qubits, const Amplitudes& a) {
  if (a.ndim() != 1) throw csa::DimensionError("amplitudes must be one-dimensional");
  const auto* p = a.data();
  return csa::Wavefunction(n_qubits, std::vector<csa::Amplitude>(p, p + a.size()));
}

py::array_t<std::complex<double>> to_array(const csa::Wavefunction& psi) {
  return py::array_t<std::complex<double>>(static_cast<py::ssize_t>(psi.dim()), psi.amplitudes().data());
}

py::array_t<double> tensor_to_array(const csa::Tensor4& t) {
  const py::ssize_t n = t.n();
  py::array_t<double> out({n, n, n, n});
  std::copy(t.data(), t.data() + t.size(), out.mutable_data());
  return out;
}

csa::Tensor4 array_to_tensor(const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
  if (a.ndim() != 4 || a.shape(0) != a.shape(1) || a.shape(0) != a.shape(2) || a.shape(0) != a.shape(3)) {
    throw csa::DimensionError("two-body tensor must have shape (n, n, n, n)");
  }
  csa::Tensor4 t(static_cast<int>(a.shape(0)));
  std::copy(a.data(), a.data() + a.size(), t.data());
  return t;
}

py::dict decomposition_dict(const csa::DecompositionResult& r) {
  py::list fragments;
  for (std::size_t i = 0; i < r.fragments.size(); ++i) {
    const auto rf = csa::rotated_form(r.fragments[i]);
    py::dict f;
    f["rotation"] = rf.rotation;
    f["lambda"] = rf.lambda;
    f["tensor"] = tensor_to_array(r.fragment_tensor(i));
    fragments.append(f);
  }
  py::dict d;
  d["method"] = csa::to_string(r.method);
  d["mode"] = r.mode;
  d["fragments"] = fragments;
  d["residual_norm1"] = r.residual_norm1;
  d["residual_trace"] = r.residual_trace;
  d["residual_tensor"] = tensor_to_array(r.residual_tensor);
  d["converged"] = r.converged;
  d["seed"] = r.seed;
  return d;
}

csa::Relation relation_of(csa::Method m) {
  return m == csa::Method::kFcSi ? csa::Relation::kFullCommute : csa::Relation::kQubitwiseCommute;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Pauli grouping and Cartan-subalgebra decompositions for measurement budgeting";

  auto base = py::register_exception<csa::Error>(m, "CsaError", PyExc_RuntimeError);
  py::register_exception<csa::ParseError>(m, "ParseError", base.ptr());
  py::register_exception<csa::ValidationError>(m, "ValidationError", base.ptr());
  py::register_exception<csa::DimensionError>(m, "DimensionError", base.ptr());
  py::register_exception<csa::NonHermitianError>(m, "NonHermitianError", base.ptr());
  py::register_exception<csa::ConvergenceError>(m, "ConvergenceError", base.ptr());
  py::register_exception<csa::DecompositionError>(m, "DecompositionError", base.ptr());

  py::class_<csa::PauliSum>(m, "PauliSum")
      .def_static("from_text", [](const std::string& s) { return csa::parse_pauli_sum(s); }, py::arg("text"))
      .def_static("load", &csa::parse_pauli, py::arg("path"))
      .def("to_text", &csa::format_pauli_sum)
      .def_property_readonly("n_qubits", &csa::PauliSum::n_qubits)
      .def("__len__", &csa::PauliSum::size)
      .def("one_norm", &csa::PauliSum::one_norm)
      .def("terms",
           [](const csa::PauliSum& s) {
             std::vector<std::pair<std::string, double>> out;
             for (const auto& [p, c] : s) out.emplace_back(p.to_string(), c);
             return out;
           },
           "List of (letters, coefficient); the identity is the empty string.")
      .def("__eq__", [](const csa::PauliSum& a, const csa::PauliSum& b) { return a == b; })
      .def("__repr__", [](const csa::PauliSum& s) {
        return "<PauliSum n_qubits=" + std::to_string(s.n_qubits()) + " terms=" + std::to_string(s.size()) + ">";
      });

  py::class_<csa::IntegralTensors>(m, "IntegralTensors")
      .def_static("load", &csa::parse_integrals, py::arg("path"))
      .def_static("from_json", [](const std::string& s) { return csa::parse_integrals_text(s); }, py::arg("text"))
      .def("to_json", &csa::format_integrals)
      .def_readonly("n_spatial", &csa::IntegralTensors::n_spatial)
      .def_readonly("n_electrons", &csa::IntegralTensors::n_electrons)
      .def_readonly("scalar_term", &csa::IntegralTensors::scalar_term)
      .def_property_readonly("h", [](const csa::IntegralTensors& t) { return t.h; })
      .def_property_readonly("g", [](const csa::IntegralTensors& t) { return tensor_to_array(t.g); });

  m.def(
      "map_hamiltonian",
      [](const csa::IntegralTensors& t, const std::string& mapping) {
        return csa::map_hamiltonian(t, csa::parse_mapping(mapping));
      },
      py::arg("integrals"), py::arg("mapping") = "bk", "Qubit image under \"jw\" or \"bk\".");

  m.def(
      "group",
      [](const csa::PauliSum& h, const std::string& method) {
        const auto mth = csa::parse_method(method);
        if (csa::is_fermionic(mth)) throw csa::ValidationError("group() takes qwc-lf, qwc-si or fc-si");
        const auto groups = mth == csa::Method::kQwcLf ? csa::largest_first(h, relation_of(mth))
                                                       : csa::sorted_insertion(h, relation_of(mth));
        std::vector<csa::PauliSum> out;
        for (const auto& g : groups) out.push_back(g.terms);
        return out;
      },
      py::arg("hamiltonian"), py::arg("method") = "fc-si");

  m.def("commutes", [](const csa::PauliSum& a, const csa::PauliSum& b) { return csa::sums_commute(a, b); });

  m.def(
      "ground_state",
      [](const csa::PauliSum& h) {
        const auto gs = csa::ground_state(h);
        return py::make_tuple(gs.energy, to_array(gs.state));
      },
      py::arg("hamiltonian"), "(energy, amplitudes) by restarted Lanczos.");

  m.def(
      "sector_ground_state",
      [](const csa::IntegralTensors& t, const std::string& mapping) {
        const auto gs = csa::sector_ground_state(t);
        return py::make_tuple(gs.energy, to_array(csa::embed(gs.sector, gs.vector, csa::parse_mapping(mapping))));
      },
      py::arg("integrals"), py::arg("mapping") = "bk",
      "(energy, amplitudes) at the input electron count, embedded under the mapping.");

  m.def(
      "hf_state", [](int n_qubits, int n_electrons, const std::string& mapping) {
        return to_array(csa::hf_state(n_qubits, n_electrons, csa::parse_mapping(mapping)));
      },
      py::arg("n_qubits"), py::arg("n_electrons"), py::arg("mapping") = "bk");

  m.def(
      "expectation", [](const csa::PauliSum& h, const Amplitudes& a) {
        return csa::expectation(h, to_wavefunction(h.n_qubits(), a));
      },
      py::arg("hamiltonian"), py::arg("amplitudes"));

  m.def(
      "variance", [](const csa::PauliSum& h, const Amplitudes& a) {
        return csa::variance(h, to_wavefunction(h.n_qubits(), a));
      },
      py::arg("hamiltonian"), py::arg("amplitudes"));

  m.def(
      "allocate",
      [](const std::vector<double>& variances, double epsilon) {
        const auto r = csa::allocate(variances, epsilon);
        py::dict d;
        d["eps2K"] = r.total_eps2K;
        d["shot_fractions"] = r.shot_fractions;
        d["shots"] = r.shots();
        d["total_shots"] = r.total_shots();
        return d;
      },
      py::arg("variances"), py::arg("epsilon") = 1.0);

  m.def(
      "svd_factorize", [](const csa::IntegralTensors& t, double tol) { return decomposition_dict(csa::svd_factorize(t, tol)); },
      py::arg("integrals"), py::arg("tol") = 1e-5);
  m.def(
      "gfro",
      [](const csa::IntegralTensors& t, double tol, std::uint64_t seed) {
        csa::GreedyOptions o;
        o.seed = seed;
        return decomposition_dict(csa::gfro(t, tol, o));
      },
      py::arg("integrals"), py::arg("tol") = 1e-5, py::arg("seed") = 0);
  m.def(
      "vgfro",
      [](const csa::IntegralTensors& t, double tol, double w, int mu, const std::string& mapping, std::uint64_t seed) {
        csa::GreedyOptions o;
        o.seed = seed;
        const auto mp = csa::parse_mapping(mapping);
        const auto ref = csa::hf_state(t.n_spin_orbitals(), t.n_electrons, mp);
        return decomposition_dict(csa::vgfro(t, tol, w, mu, ref, mp, o));
      },
      py::arg("integrals"), py::arg("tol") = 1e-5, py::arg("w") = 0.5, py::arg("mu") = 30, py::arg("mapping") = "bk",
      py::arg("seed") = 0, "Greedy fit with a variance penalty on the Hartree-Fock state.");
  m.def(
      "fro",
      [](const csa::IntegralTensors& t, double tol, std::uint64_t seed, int restarts) {
        csa::FroOptions o;
        o.seed = seed;
        o.restarts = restarts;
        return decomposition_dict(csa::fro_minimal(t, tol, o));
      },
      py::arg("integrals"), py::arg("tol") = 1e-5, py::arg("seed") = 0, py::arg("restarts") = 8);
  m.def(
      "fragment_to_pauli",
      [](const py::array_t<double, py::array::c_style | py::array::forcecast>& f, const std::string& mapping) {
        return csa::fragment_to_pauli(array_to_tensor(f), csa::parse_mapping(mapping));
      },
      py::arg("tensor"), py::arg("mapping") = "bk");

  m.def(
      "run_document",
      [](const std::string& input, const std::string& method, const std::string& kind, const std::string& mapping,
         const std::string& state, double tol, double w, int mu, double epsilon, std::uint64_t seed) {
        csa::RunConfig c;
        c.input = input;
        c.kind = csa::parse_input_kind(kind);
        c.mapping = csa::parse_mapping(mapping);
        c.state = csa::parse_state_kind(state);
        c.norm_tol = tol;
        c.w = w;
        c.mu = mu;
        c.epsilon = epsilon;
        c.seed = seed;
        std::vector<csa::Report> reports;
        if (method == "all") {
          for (auto mth : csa::all_methods()) {
            if (c.kind == csa::InputKind::kPauli && csa::is_fermionic(mth)) continue;
            c.method = mth;
            reports.push_back(csa::run(c));
          }
        } else {
          c.method = csa::parse_method(method);
          reports.push_back(csa::run(c));
        }
        return csa::report_document(reports);
      },
      py::arg("input"), py::arg("method") = "fc-si", py::arg("kind") = "integrals", py::arg("mapping") = "bk",
      py::arg("state") = "ground", py::arg("tol") = 1e-5, py::arg("w") = 0.5, py::arg("mu") = 30,
      py::arg("epsilon") = 1.0, py::arg("seed") = 0, "Full pipeline; returns the JSON report document.");
}
