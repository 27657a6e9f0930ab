// Copyright 2026 The Focklab Authors
// SPDX-License-Identifier: Apache-2.0

#include "serialization.hpp"

#include <cstdio>

namespace focklab {

namespace {

Json header_of(const FockSpace& s) {
  return Json{{"d", s.dim()}, {"n_max", s.n_max()}, {"epsilon", s.epsilon()}};
}

SpacePtr space_from_header(const Json& j) {
  return make_space(j.at("d").get<int>(), j.at("n_max").get<int>(),
                    j.at("epsilon").get<double>());
}

}  // namespace

Json vector_to_json(const FockVector& v) {
  Json j = header_of(*v.space());
  Json entries = Json::array();
  for (const auto& [alpha, c] : v.terms()) {
    entries.push_back(Json::array({alpha, c.real(), c.imag()}));
  }
  j["entries"] = std::move(entries);
  return j;
}

FockVector vector_from_json(const Json& j) {
  FockVector v(space_from_header(j));
  for (const auto& e : j.at("entries")) {
    MultiIndex alpha = e.at(0).get<MultiIndex>();
    v.set_coeff(alpha, Complex(e.at(1).get<double>(), e.at(2).get<double>()));
  }
  return v;
}

namespace {

Json operator_entries(const SpacePtr& space, const Mat& m) {
  const BasisTable& basis = space->basis();
  Json entries = Json::array();
  for (std::int64_t col = 0; col < m.cols(); ++col) {
    for (std::int64_t row = 0; row < m.rows(); ++row) {
      const Complex c = m(row, col);
      if (c == Complex(0.0)) continue;
      entries.push_back(
          Json::array({basis.at(row), basis.at(col), c.real(), c.imag()}));
    }
  }
  return entries;
}

}  // namespace

Json block_operator_to_json(const BlockOperator& op) {
  Json j = header_of(*op.space());
  j["entries"] = operator_entries(op.space(), op.to_dense());
  return j;
}

Json dense_operator_to_json(const DenseOperator& op) {
  Json j = header_of(*op.space());
  j["entries"] = operator_entries(op.space(), op.matrix());
  return j;
}

DenseOperator dense_operator_from_json(const Json& j) {
  SpacePtr space = space_from_header(j);
  const BasisTable& basis = space->basis();
  Mat m = Mat::Zero(space->total_dim(), space->total_dim());
  for (const auto& e : j.at("entries")) {
    MultiIndex out = e.at(0).get<MultiIndex>();
    MultiIndex in = e.at(1).get<MultiIndex>();
    m(basis.index_of(out), basis.index_of(in)) =
        Complex(e.at(2).get<double>(), e.at(3).get<double>());
  }
  return DenseOperator(space, std::move(m));
}

Json symbol_to_json(const PolySymbol& b) {
  Json terms = Json::array();
  for (const auto& [k, c] : b.terms()) {
    terms.push_back(Json::array({k.first, k.second, c.real(), c.imag()}));
  }
  Json j{{"d", b.dim()}, {"terms", std::move(terms)}};
  if (auto hom = b.homogeneity(); hom && !b.empty()) {
    j["p"] = hom->first;
    j["q"] = hom->second;
  } else {
    j["p"] = nullptr;
    j["q"] = nullptr;
  }
  return j;
}

PolySymbol symbol_from_json(const Json& j) {
  PolySymbol b(j.at("d").get<int>());
  for (const auto& t : j.at("terms")) {
    b.add_term(t.at(0).get<MultiIndex>(), t.at(1).get<MultiIndex>(),
               Complex(t.at(2).get<double>(), t.at(3).get<double>()));
  }
  return b;
}

Json trig_to_json(const TrigSymbol& b) {
  Json atoms = Json::array();
  for (const auto& atom : b.atoms) {
    Json xi = Json::array();
    for (std::int64_t i = 0; i < atom.xi.size(); ++i) {
      xi.push_back(atom.xi[i].real());
      xi.push_back(atom.xi[i].imag());
    }
    atoms.push_back(
        Json::array({atom.coeff.real(), atom.coeff.imag(), std::move(xi)}));
  }
  return Json{{"atoms", std::move(atoms)}};
}

TrigSymbol trig_from_json(const Json& j) {
  TrigSymbol b;
  for (const auto& a : j.at("atoms")) {
    const auto& xi_flat = a.at(2);
    if (xi_flat.size() % 2 != 0)
      throw std::invalid_argument("trig_from_json: odd interleaved length");
    Vec xi(xi_flat.size() / 2);
    for (std::int64_t i = 0; i < xi.size(); ++i) {
      xi[i] = Complex(xi_flat.at(2 * i).get<double>(),
                      xi_flat.at(2 * i + 1).get<double>());
    }
    b.atoms.push_back(
        {Complex(a.at(0).get<double>(), a.at(1).get<double>()), std::move(xi)});
  }
  return b;
}

Json matrix_to_json(const Mat& m) {
  Json rows = Json::array();
  for (std::int64_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::int64_t c = 0; c < m.cols(); ++c) {
      row.push_back(Json::array({m(r, c).real(), m(r, c).imag()}));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Mat matrix_from_json(const Json& j) {
  const std::int64_t nr = j.size();
  const std::int64_t nc = nr ? j.at(0).size() : 0;
  Mat m(nr, nc);
  for (std::int64_t r = 0; r < nr; ++r) {
    for (std::int64_t c = 0; c < nc; ++c) {
      m(r, c) = Complex(j.at(r).at(c).at(0).get<double>(),
                        j.at(r).at(c).at(1).get<double>());
    }
  }
  return m;
}

Json model_to_json(const ModelSpec& m) {
  return Json{{"A", matrix_to_json(m.A)},
              {"Qtensor", matrix_to_json(m.Qtensor)},
              {"epsilon", m.epsilon},
              {"n_max", m.n_max},
              {"V_norm", m.v_norm}};
}

ModelSpec model_from_json(const Json& j) {
  ModelSpec m;
  m.A = matrix_from_json(j.at("A"));
  m.Qtensor = matrix_from_json(j.at("Qtensor"));
  m.epsilon = j.at("epsilon").get<double>();
  m.n_max = j.at("n_max").get<int>();
  m.v_norm = j.contains("V_norm") && !j.at("V_norm").is_null()
                 ? j.at("V_norm").get<double>()
                 : 2.0 * operator_norm(m.Qtensor);
  m.validate();
  return m;
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace focklab
