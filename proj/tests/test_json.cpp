#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "ldoi/gallery.hpp"
#include "ldoi/json_io.hpp"
#include "support.hpp"

using namespace ldoi;
using ldoi::io::json;
using ldoi::testing::Rng;
namespace g = ldoi::gallery;

namespace {

bool same_triple(const MatrixTriple& x, const MatrixTriple& y) {
  return x.A == y.A && x.B == y.B && x.C == y.C;
}

json params_matrix(const Matrix& m) { return io::to_json(m); }

}  // namespace

TEST_CASE("matrix round trip is exact") {
  Rng rng(1);
  for (Index r = 0; r <= 4; ++r) {
    const Matrix m = rng.matrix(r, 3);
    const Matrix back = io::matrix_from_json(io::parse(io::dump(io::to_json(m))));
    CHECK(back == m);
  }
}

TEST_CASE("matrix encoding accepts plain numbers and rejects malformed objects") {
  const Matrix m = io::matrix_from_json(io::parse(R"({"rows":2,"cols":2,"data":[1,[0,2],-3.5,[4,-1]]})"));
  CHECK(m(0, 0) == cplx(1.0));
  CHECK(m(0, 1) == cplx(0.0, 2.0));
  CHECK(m(1, 0) == cplx(-3.5));
  CHECK(m(1, 1) == cplx(4.0, -1.0));
  CHECK_THROWS_AS(io::matrix_from_json(io::parse(R"({"rows":2,"cols":2,"data":[1,2,3]})")), ValidationError);
  CHECK_THROWS_AS(io::matrix_from_json(io::parse(R"({"rows":1,"cols":1,"data":["x"]})")), ValidationError);
  CHECK_THROWS_AS(io::matrix_from_json(io::parse(R"({"rows":1,"data":[1]})")), ValidationError);
  CHECK_THROWS_AS(io::matrix_from_json(io::parse(R"({"rows":1.5,"cols":1,"data":[1]})")), ValidationError);
  CHECK_THROWS_AS(io::matrix_from_json(io::parse(R"([1,2])")), ValidationError);
  CHECK_THROWS_AS(io::matrix_from_json(io::parse(R"({"rows":1,"cols":1,"data":[[1,2,3]]})")), ValidationError);
}

TEST_CASE("vector encodings") {
  const Vector a = io::vector_from_json(io::parse(R"([1,[0,1],2])"));
  const Vector b = io::vector_from_json(io::parse(R"({"rows":1,"cols":3,"data":[1,[0,1],2]})"));
  const Vector c = io::vector_from_json(io::parse(R"({"rows":3,"cols":1,"data":[1,[0,1],2]})"));
  CHECK(a == b);
  CHECK(a == c);
  CHECK(io::vector_from_json(io::vector_to_json(a)) == a);
  CHECK_THROWS_AS(io::vector_from_json(io::parse(R"({"rows":2,"cols":2,"data":[1,2,3,4]})")), ValidationError);
}

TEST_CASE("triple round trip and class inference from missing slots") {
  Rng rng(2);
  const MatrixTriple t = rng.triple(3);
  std::optional<InvariantClass> cls;
  CHECK(same_triple(io::triple_from_json(io::parse(io::dump(io::to_json(t))), &cls), t));
  CHECK_FALSE(cls.has_value());

  json only_b = io::to_json(t);
  only_b["C"] = nullptr;
  const MatrixTriple tb = io::triple_from_json(only_b, &cls);
  REQUIRE(cls.has_value());
  CHECK(*cls == InvariantClass::CLDUI);
  CHECK(tb.C == diag_part(t.A));

  json only_c = io::to_json(t);
  only_c.erase("B");
  const MatrixTriple tc = io::triple_from_json(only_c, &cls);
  REQUIRE(cls.has_value());
  CHECK(*cls == InvariantClass::LDUI);
  CHECK(tc.B == diag_part(t.A));

  json labelled = io::to_json(t);
  labelled["class"] = "LDOI";
  labelled["C"] = nullptr;
  io::triple_from_json(labelled, &cls);
  CHECK(*cls == InvariantClass::LDOI);
}

TEST_CASE("triple validation") {
  Rng rng(3);
  MatrixTriple t = rng.triple(3);
  json j = io::to_json(t);
  j["B"] = io::to_json(rng.matrix(2, 2));
  CHECK_THROWS_AS(io::triple_from_json(j), ValidationError);
  json nonsquare = io::to_json(t);
  nonsquare["A"] = io::to_json(rng.matrix(2, 3));
  CHECK_THROWS_AS(io::triple_from_json(nonsquare), ValidationError);
  json mismatch = io::to_json(t);
  Matrix b = t.B;
  b(0, 0) += 1.0;
  mismatch["B"] = io::to_json(b);
  CHECK_THROWS_AS(io::triple_from_json(mismatch), ValidationError);
  CHECK_THROWS_AS(io::triple_from_json(json::array()), ValidationError);
  CHECK_THROWS_AS(io::triple_from_json(io::parse(R"({"rows":1})")), ValidationError);
}

TEST_CASE("map and witness round trips") {
  for (const CovariantMap& m : {g::choi_cho(1.0, 2.0, 0.0), g::lambda(3), g::tau(3, 1), g::identity_map(2)}) {
    const CovariantMap back = io::map_from_json(io::parse(io::dump(io::to_json(m))));
    CHECK(back.cls == m.cls);
    CHECK(same_triple(back.triple, m.triple));
  }
  CHECK_THROWS_AS(io::map_from_json(io::parse(R"({"class":"XYZ","triple":{}})")), ValidationError);
  CHECK_THROWS_AS(io::map_from_json(io::parse(R"({"class":3})")), ValidationError);

  Rng rng(4);
  const TcpWitness w = rng.witness(3, 4);
  const TcpWitness wb = io::witness_from_json(io::to_json(w));
  CHECK(wb.V == w.V);
  CHECK(wb.W == w.W);
  json bad = io::to_json(w);
  bad["W"] = io::to_json(rng.matrix(3, 2));
  CHECK_THROWS_AS(io::witness_from_json(bad), ValidationError);
}

TEST_CASE("Kraus set round trip") {
  const KrausSet k = kraus_extract(g::lambda(3));
  const json j = io::to_json(k);
  CHECK(j.at("rank").get<std::size_t>() == k.size());
  const KrausSet back = io::kraus_from_json(j);
  REQUIRE(back.size() == k.size());
  for (std::size_t i = 0; i < k.size(); ++i) {
    CHECK(back.left[i] == k.left[i]);
    CHECK(back.right[i] == k.right[i]);
  }
  json bad = j;
  bad["right"] = json::array();
  CHECK_THROWS_AS(io::kraus_from_json(bad), ValidationError);
}

TEST_CASE("read_triple_like accepts triples, maps and bundles") {
  const json bundle = io::gallery_generate("stormer", json{{"mu", 2.0}});
  io::TripleInput s = io::read_triple_like(bundle);
  CHECK_FALSE(s.is_map);
  REQUIRE(s.cls.has_value());
  CHECK(*s.cls == InvariantClass::CLDUI);
  CHECK(same_triple(s.triple, g::stormer(2.0).state));

  io::TripleInput m = io::read_triple_like(io::to_json(g::lambda(3)));
  CHECK(m.is_map);
  CHECK(*m.cls == InvariantClass::LDOI);

  io::TripleInput w = io::read_triple_like(io::gallery_generate("werner", json{{"a", 1.0}, {"b", 0.2}, {"d", 3}}));
  CHECK(*w.cls == InvariantClass::LDUI);
  CHECK_THROWS_AS(io::read_triple_like(json::array()), ValidationError);
}

TEST_CASE("catalog parsing") {
  json cat = json::array();
  cat.push_back(json{{"id", "lam"}, {"class", io::to_json(g::lambda(3)).at("class")},
                     {"triple", io::to_json(g::lambda(3).triple)}});
  const auto entries = io::catalog_from_json(cat);
  REQUIRE(entries.size() == 1);
  CHECK(entries[0].id == "lam");
  CHECK(io::catalog_from_json(json{{"catalog", cat}}).size() == 1);
  CHECK_THROWS_AS(io::catalog_from_json(json{{"id", 1}}), ValidationError);
  cat[0]["id"] = 5;
  CHECK_THROWS_AS(io::catalog_from_json(cat), ValidationError);
}

TEST_CASE("every gallery family round-trips through its JSON generator") {
  Rng rng(5);
  const Matrix a = rng.real_matrix(3, 3).cwiseAbs().cast<cplx>();
  Matrix y = rng.real_matrix(3, 3).cwiseAbs().cast<cplx>();
  y = (y + y.transpose()).eval();
  Matrix b = hermitian_part(rng.matrix(3, 3));
  b.diagonal() = a.diagonal();
  Matrix bj = hermitian_part(rng.matrix(3, 3));
  bj.diagonal().setOnes();
  Matrix cj = hermitian_part(rng.matrix(3, 3));
  cj.diagonal().setOnes();
  const Matrix s = rng.matrix(3, 3), x = rng.matrix(3, 3), z = rng.matrix(3, 3);
  const double th = 0.4, n = std::sqrt(2.0 * std::cos(th));
  const Vector e1 = n * Vector::Unit(3, 0), e2 = n * Vector::Unit(3, 1), e3 = n * Vector::Unit(3, 2);

  auto state = [](const std::string& fam, const json& p, const g::ClassedTriple& expect) {
    const json out = io::gallery_generate(fam, p);
    CHECK(out.at("class").get<std::string>() == to_string(expect.cls));
    CHECK(max_abs(io::triple_from_json(out).A - expect.triple.A) == 0.0);
    CHECK(max_abs(io::triple_from_json(out).B - expect.triple.B) == 0.0);
    CHECK(max_abs(io::triple_from_json(out).C - expect.triple.C) == 0.0);
  };
  auto map = [](const std::string& fam, const json& p, const CovariantMap& expect) {
    const CovariantMap got = io::map_from_json(io::gallery_generate(fam, p));
    CHECK(got.cls == expect.cls);
    CHECK(same_triple(got.triple, expect.triple));
  };

  state("diagonal", json{{"A", params_matrix(a)}}, g::diagonal(a));
  state("werner", json{{"a", 1.0}, {"b", 0.3}, {"d", 3}}, g::werner(1.0, 0.3, 3));
  state("isotropic", json{{"a", 1.0}, {"b", -0.2}, {"d", 4}}, g::isotropic(1.0, -0.2, 4));
  state("dicke", json{{"Y", params_matrix(y)}}, g::dicke(y));
  state("pt_invariant", json{{"A", params_matrix(a)}, {"B", params_matrix(b)}}, g::pt_invariant(a, b, g::PtSide::B));
  state("pt_invariant", json{{"A", params_matrix(a)}, {"B", params_matrix(b)}, {"side", "Bt"}},
        g::pt_invariant(a, b, g::PtSide::B_transpose));
  state("a_equals_j", json{{"B", params_matrix(bj)}, {"C", params_matrix(cj)}}, g::a_equals_j(bj, cj));
  state("canonical_npt", json{{"a", 0.5}, {"b", 0.2}, {"c", 0.7}, {"d", 3}}, g::canonical_npt(0.5, 0.2, 0.7, 3));
  state("edge_3x3",
        json{{"b", 1.3}, {"theta", th}, {"eta", io::vector_to_json(e1)}, {"zeta", io::vector_to_json(e2)},
             {"xi", io::vector_to_json(e3)}},
        g::edge_3x3(1.3, th, e1, e2, e3));
  state("unit_rank_ldui",
        json{{"d", 3}, {"i", 0}, {"j", 2}, {"alpha", 1.0}, {"beta", json::array({0.0, 2.0})}, {"gamma", 0.5},
             {"delta", -1.0}},
        g::unit_rank_ldui(3, 0, 2, 1.0, cplx(0.0, 2.0), 0.5, -1.0));
  state("nontcp_fixture", json::object(), g::nontcp_fixture());
  state("nontcp_fixture", json(nullptr), g::nontcp_fixture());

  map("choi_general", json{{"A", params_matrix(a)}}, g::choi_general(a));
  map("choi_cho", json{{"a", 1.0}, {"b", 2.0}, {"c", 0.0}}, g::choi_cho(1.0, 2.0, 0.0));
  map("choi_kye", json{{"a", 1.0}, {"c1", 0.5}, {"c2", 0.5}, {"c3", 2.0}}, g::choi_kye(1.0, 0.5, 0.5, 2.0));
  map("tau", json{{"d", 4}, {"k", 2}}, g::tau(4, 2));
  map("lambda", json{{"d", 4}}, g::lambda(4));
  map("schur", json{{"S", params_matrix(s)}}, g::schur(s));
  map("depolarizing", json{{"d", 3}}, g::depolarizing(3));
  map("dephasing", json{{"d", 3}}, g::dephasing(3));
  map("classical", json{{"A", params_matrix(a)}}, g::classical(a));
  map("uc", json{{"a", 1.0}, {"b", 0.5}, {"d", 3}}, g::uc(1.0, 0.5, 3));
  map("cuc", json{{"a", 1.0}, {"b", 0.5}, {"d", 3}}, g::cuc(1.0, 0.5, 3));
  map("diag_preserving", json{{"X", params_matrix(x)}, {"Y", params_matrix(z)}}, g::diag_preserving(x, z));
  map("identity", json{{"d", 3}}, g::identity_map(3));
  map("transposition", json{{"d", 3}}, g::transposition(3));

  const json st = io::gallery_generate("stormer", json{{"mu", 5.0}});
  CHECK(st.at("state").at("class") == "CLDUI");
  CHECK(same_triple(io::map_from_json(st.at("witness_map")).triple, g::stormer(5.0).witness_map.triple));

  for (const char* kind : {"Ps", "Pa", "F", "Pomega", "Peq", "symmetric_Ps"}) {
    const Matrix p = io::matrix_from_json(io::gallery_generate("projector", json{{"kind", kind}, {"d", 3}}));
    CHECK(p == g::projector(g::projector_kind_from_string(kind), 3));
  }
}

TEST_CASE("every listed family name is accepted by the generator") {
  // Parameter-free failures must be about missing keys, never an unknown family.
  for (const std::string& fam : g::family_names()) {
    try {
      io::gallery_generate(fam, json::object());
    } catch (const ValidationError& e) {
      CHECK(std::string(e.what()).find("unknown gallery family") == std::string::npos);
    }
  }
}

TEST_CASE("gallery parameter errors") {
  CHECK_THROWS_AS(io::gallery_generate("nope", json::object()), ValidationError);
  CHECK_THROWS_AS(io::gallery_generate("werner", json{{"a", 1.0}, {"b", 0.0}}), ValidationError);
  CHECK_THROWS_AS(io::gallery_generate("werner", json{{"a", "1"}, {"b", 0.0}, {"d", 3}}), ValidationError);
  CHECK_THROWS_AS(io::gallery_generate("werner", json{{"a", 1.0}, {"b", 0.0}, {"d", 2.5}}), ValidationError);
  CHECK_THROWS_AS(io::gallery_generate("tau", json::array()), ValidationError);
  CHECK_THROWS_AS(io::gallery_generate("projector", json{{"kind", 1}, {"d", 3}}), ValidationError);
  CHECK_THROWS_AS(io::gallery_generate("projector", json{{"kind", "Q"}, {"d", 3}}), ValidationError);
  CHECK_THROWS_AS(io::gallery_generate("pt_invariant", json{{"A", params_matrix(Matrix::Identity(2, 2))},
                                                            {"B", params_matrix(Matrix::Identity(2, 2))},
                                                            {"side", "C"}}),
                  ValidationError);
}

TEST_CASE("report encodings carry the documented keys") {
  const json r = io::to_json(ppt_test(g::werner(1.0, 0.2, 3).triple));
  CHECK(r.at("passed").get<bool>());
  REQUIRE(r.at("items").is_array());
  for (const auto& it : r.at("items")) {
    CHECK(it.contains("name"));
    CHECK(it.contains("status"));
    CHECK(it.contains("margin"));
  }

  const Verdict v = separability_verdict(g::stormer(1.0).state);
  const json jv = io::to_json(v);
  for (const char* key : {"outcome", "method", "margin", "witness", "failed", "map", "min_eigenvalue", "inconclusive",
                          "detecting_maps", "rejected_maps"})
    CHECK(jv.contains(key));
  CHECK(jv.at("outcome") == "ENTANGLED");
  CHECK(jv.at("witness").is_null());
  for (const auto& dm : jv.at("detecting_maps")) {
    CHECK(dm.at("id").is_string());
    CHECK(dm.at("min_eigenvalue").get<double>() < 0.0);
  }

  const json sep = io::to_json(separability_verdict(g::werner(1.0, 0.5, 3).triple));
  CHECK(sep.at("outcome") == "SEPARABLE");
  const TcpWitness w = io::witness_from_json(sep.at("witness"));
  CHECK(verify_tcp_witness(g::werner(1.0, 0.5, 3).triple, w));

  const json cat = io::to_json(witness_catalog_validate(default_catalog(3, {1.0}), 200, 1));
  CHECK(cat.at("all_accepted").get<bool>());
  for (const auto& e : cat.at("entries")) {
    CHECK(e.contains("id"));
    CHECK(e.contains("accepted"));
    CHECK(e.contains("reason"));
  }

  const json props = io::to_json(map_properties(g::identity_map(3)));
  CHECK(props.at("cp").get<bool>());
  CHECK(props.at("channel").get<bool>());
  CHECK(props.at("eb").is_string());
}

TEST_CASE("malformed JSON text is a validation error") {
  CHECK_THROWS_AS(io::parse("{"), ValidationError);
  CHECK_THROWS_AS(io::parse("[1,2,"), ValidationError);
  CHECK_NOTHROW(io::parse("{}"));
}
