#include "ldoi/json_io.hpp"

#include "ldoi/gallery.hpp"

namespace ldoi::io {

namespace {

const json& require_key(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ValidationError(std::string("missing key '") + key + "'");
  return j.at(key);
}

double number(const json& j, const char* key) {
  const json& v = require_key(j, key);
  if (!v.is_number()) throw ValidationError(std::string("'") + key + "' must be a number");
  return v.get<double>();
}

Index integer(const json& j, const char* key) {
  const json& v = require_key(j, key);
  if (!v.is_number_integer()) throw ValidationError(std::string("'") + key + "' must be an integer");
  return static_cast<Index>(v.get<long long>());
}

Matrix matrix_key(const json& j, const char* key) { return matrix_from_json(require_key(j, key)); }

json state_json(const gallery::ClassedTriple& ct) {
  json out = to_json(ct.triple);
  out["class"] = to_string(ct.cls);
  return out;
}

}  // namespace

cplx complex_from_json(const json& j) {
  if (j.is_number()) return cplx(j.get<double>(), 0.0);
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return cplx(j[0].get<double>(), j[1].get<double>());
  throw ValidationError("complex entries must be a number or a [re, im] pair");
}

json to_json(const Matrix& m) {
  json data = json::array();
  for (Index i = 0; i < m.rows(); ++i)
    for (Index k = 0; k < m.cols(); ++k) data.push_back(json::array({m(i, k).real(), m(i, k).imag()}));
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", data}};
}

Matrix matrix_from_json(const json& j) {
  if (!j.is_object()) throw ValidationError("matrix must be an object with rows, cols and data");
  const Index rows = integer(j, "rows"), cols = integer(j, "cols");
  if (rows < 0 || cols < 0) throw ValidationError("matrix shape must be non-negative");
  const json& data = require_key(j, "data");
  if (!data.is_array() || static_cast<Index>(data.size()) != rows * cols)
    throw ValidationError("matrix data must hold rows * cols entries");
  Matrix m(rows, cols);
  for (Index i = 0; i < rows; ++i)
    for (Index k = 0; k < cols; ++k) m(i, k) = complex_from_json(data[static_cast<std::size_t>(i * cols + k)]);
  require_finite(m, "matrix");
  return m;
}

Vector vector_from_json(const json& j) {
  if (j.is_object()) {
    const Matrix m = matrix_from_json(j);
    if (m.cols() != 1 && m.rows() != 1) throw ValidationError("vector must have a single row or column");
    return m.cols() == 1 ? Vector(m.col(0)) : Vector(m.row(0).transpose());
  }
  if (!j.is_array()) throw ValidationError("vector must be an array or a matrix object");
  Vector v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Index>(i)) = complex_from_json(j[i]);
  return v;
}

json vector_to_json(const Vector& v) {
  json out = json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(json::array({v(i).real(), v(i).imag()}));
  return out;
}

json to_json(const MatrixTriple& t) { return json{{"A", to_json(t.A)}, {"B", to_json(t.B)}, {"C", to_json(t.C)}}; }

MatrixTriple triple_from_json(const json& j, std::optional<InvariantClass>* inferred) {
  if (!j.is_object()) throw ValidationError("triple must be an object with A, B and C");
  const Matrix A = matrix_key(j, "A");
  require_square(A, "A");
  const bool has_b = j.contains("B") && !j.at("B").is_null();
  const bool has_c = j.contains("C") && !j.at("C").is_null();
  const Matrix dA = diag_part(A);
  MatrixTriple t{A, has_b ? matrix_from_json(j.at("B")) : dA, has_c ? matrix_from_json(j.at("C")) : dA};
  std::optional<InvariantClass> cls;
  if (j.contains("class") && j.at("class").is_string()) cls = class_from_string(j.at("class").get<std::string>());
  if (!cls) {
    if (has_b && !has_c) cls = InvariantClass::CLDUI;
    if (!has_b && has_c) cls = InvariantClass::LDUI;
  }
  validate(t);
  if (inferred) *inferred = cls;
  return t;
}

json to_json(const CovariantMap& m) {
  return json{{"class", map_class_name(m.cls)}, {"triple", to_json(m.triple)}};
}

CovariantMap map_from_json(const json& j) {
  const json& c = require_key(j, "class");
  if (!c.is_string()) throw ValidationError("map class must be a string");
  const InvariantClass cls = map_class_from_name(c.get<std::string>());
  return make_map(cls, triple_from_json(require_key(j, "triple")));
}

json to_json(const TcpWitness& w) { return json{{"V", to_json(w.V)}, {"W", to_json(w.W)}}; }

TcpWitness witness_from_json(const json& j) {
  TcpWitness w{matrix_key(j, "V"), matrix_key(j, "W")};
  if (w.V.rows() != w.W.rows() || w.V.cols() != w.W.cols()) throw ValidationError("V and W shapes differ");
  return w;
}

json to_json(const CertificateReport& r) {
  json items = json::array();
  for (const auto& it : r.items)
    items.push_back(json{{"name", it.name}, {"status", to_string(it.status)}, {"margin", it.margin}});
  return json{{"passed", r.passed()}, {"items", items}};
}

json to_json(const KrausSet& k) {
  json left = json::array(), right = json::array();
  for (const auto& p : k.left) left.push_back(to_json(p));
  for (const auto& q : k.right) right.push_back(to_json(q));
  return json{{"left", left}, {"right", right}, {"rank", k.size()}};
}

KrausSet kraus_from_json(const json& j) {
  const json& l = require_key(j, "left");
  const json& r = require_key(j, "right");
  if (!l.is_array() || !r.is_array() || l.size() != r.size())
    throw ValidationError("Kraus set needs equally long left and right lists");
  KrausSet k;
  for (const auto& x : l) k.left.push_back(matrix_from_json(x));
  for (const auto& x : r) k.right.push_back(matrix_from_json(x));
  return k;
}

json to_json(const MapProperties& p) {
  return json{{"herm_preserving", p.herm_preserving}, {"cp", p.cp},           {"ccp", p.ccp},
              {"unital", p.unital},                   {"trace_preserving", p.trace_preserving},
              {"channel", p.channel},                 {"eb", to_string(p.eb)}};
}

json to_json(const Verdict& v) {
  json out;
  out["outcome"] = to_string(v.outcome);
  out["method"] = v.method;
  out["margin"] = v.margin;
  out["witness"] = v.witness ? to_json(*v.witness) : json(nullptr);
  out["failed"] = v.failed;
  out["map"] = v.map_id.empty() ? json(nullptr) : json(v.map_id);
  out["min_eigenvalue"] = v.min_eigenvalue;
  out["inconclusive"] = v.inconclusive;
  json dm = json::array();
  for (const auto& d : v.detecting_maps) dm.push_back(json{{"id", d.id}, {"min_eigenvalue", d.min_eigenvalue}});
  out["detecting_maps"] = dm;
  out["rejected_maps"] = v.rejected_maps;
  return out;
}

json to_json(const CatalogReport& r) {
  json entries = json::array();
  for (const auto& e : r.entries) {
    json x{{"id", e.id}, {"accepted", e.accepted}, {"reason", e.reason}};
    if (e.counterexample) {
      x["counterexample"] = json{{"v", vector_to_json(e.counterexample->v)},
                                 {"w", vector_to_json(e.counterexample->w)},
                                 {"value", json::array({e.counterexample->value.real(), e.counterexample->value.imag()})}};
    }
    entries.push_back(x);
  }
  return json{{"all_accepted", r.all_accepted()}, {"entries", entries}};
}

std::vector<CatalogEntry> catalog_from_json(const json& j) {
  const json& list = j.is_object() && j.contains("catalog") ? j.at("catalog") : j;
  if (!list.is_array()) throw ValidationError("catalog must be an array of {id, class, triple}");
  std::vector<CatalogEntry> out;
  for (const auto& e : list) {
    const json& id = require_key(e, "id");
    if (!id.is_string()) throw ValidationError("catalog id must be a string");
    out.push_back(CatalogEntry{id.get<std::string>(), map_from_json(e)});
  }
  return out;
}

TripleInput read_triple_like(const json& j) {
  if (!j.is_object()) throw ValidationError("expected a JSON object");
  if (j.contains("state")) return read_triple_like(j.at("state"));
  if (j.contains("triple")) {
    CovariantMap m = map_from_json(j);
    return TripleInput{m.triple, m.cls, true};
  }
  TripleInput in;
  in.triple = triple_from_json(j, &in.cls);
  return in;
}

json gallery_generate(const std::string& family, const json& p_in) {
  const json p = p_in.is_null() ? json::object() : p_in;
  if (!p.is_object()) throw ValidationError("gallery parameters must be a JSON object");
  namespace g = gallery;
  if (family == "diagonal") return state_json(g::diagonal(matrix_key(p, "A")));
  if (family == "werner") return state_json(g::werner(number(p, "a"), number(p, "b"), integer(p, "d")));
  if (family == "isotropic") return state_json(g::isotropic(number(p, "a"), number(p, "b"), integer(p, "d")));
  if (family == "dicke") return state_json(g::dicke(matrix_key(p, "Y")));
  if (family == "pt_invariant") {
    const std::string side = p.value("side", std::string("B"));
    if (side != "B" && side != "Bt") throw ValidationError("pt_invariant side must be 'B' or 'Bt'");
    return state_json(g::pt_invariant(matrix_key(p, "A"), matrix_key(p, "B"),
                                      side == "B" ? g::PtSide::B : g::PtSide::B_transpose));
  }
  if (family == "a_equals_j") return state_json(g::a_equals_j(matrix_key(p, "B"), matrix_key(p, "C")));
  if (family == "canonical_npt")
    return state_json(g::canonical_npt(number(p, "a"), number(p, "b"), number(p, "c"), integer(p, "d")));
  if (family == "edge_3x3")
    return state_json(g::edge_3x3(number(p, "b"), number(p, "theta"), vector_from_json(require_key(p, "eta")),
                                  vector_from_json(require_key(p, "zeta")), vector_from_json(require_key(p, "xi"))));
  if (family == "unit_rank_ldui")
    return state_json(g::unit_rank_ldui(integer(p, "d"), integer(p, "i"), integer(p, "j"),
                                        complex_from_json(require_key(p, "alpha")),
                                        complex_from_json(require_key(p, "beta")),
                                        complex_from_json(require_key(p, "gamma")),
                                        complex_from_json(require_key(p, "delta"))));
  if (family == "nontcp_fixture") return state_json(g::nontcp_fixture());
  if (family == "choi_general") return to_json(g::choi_general(matrix_key(p, "A")));
  if (family == "choi_cho") return to_json(g::choi_cho(number(p, "a"), number(p, "b"), number(p, "c")));
  if (family == "choi_kye")
    return to_json(g::choi_kye(number(p, "a"), number(p, "c1"), number(p, "c2"), number(p, "c3")));
  if (family == "tau") return to_json(g::tau(integer(p, "d"), integer(p, "k")));
  if (family == "lambda") return to_json(g::lambda(integer(p, "d")));
  if (family == "schur") return to_json(g::schur(matrix_key(p, "S")));
  if (family == "depolarizing") return to_json(g::depolarizing(integer(p, "d")));
  if (family == "dephasing") return to_json(g::dephasing(integer(p, "d")));
  if (family == "classical") return to_json(g::classical(matrix_key(p, "A")));
  if (family == "uc") return to_json(g::uc(number(p, "a"), number(p, "b"), integer(p, "d")));
  if (family == "cuc") return to_json(g::cuc(number(p, "a"), number(p, "b"), integer(p, "d")));
  if (family == "diag_preserving") return to_json(g::diag_preserving(matrix_key(p, "X"), matrix_key(p, "Y")));
  if (family == "identity") return to_json(g::identity_map(integer(p, "d")));
  if (family == "transposition") return to_json(g::transposition(integer(p, "d")));
  if (family == "stormer") {
    const g::StormerBundle s = g::stormer(number(p, "mu"));
    json state = to_json(s.state);
    state["class"] = to_string(InvariantClass::CLDUI);
    return json{{"state", state}, {"witness_map", to_json(s.witness_map)}};
  }
  if (family == "projector") {
    const json& kind = require_key(p, "kind");
    if (!kind.is_string()) throw ValidationError("projector kind must be a string");
    return to_json(g::projector(g::projector_kind_from_string(kind.get<std::string>()), integer(p, "d")));
  }
  throw ValidationError("unknown gallery family '" + family + "'");
}

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("malformed JSON: ") + e.what());
  }
}

std::string dump(const json& j) { return j.dump(); }

}  // namespace ldoi::io
