#ifndef LDOI_JSON_IO_HPP
#define LDOI_JSON_IO_HPP

#include <optional>
#include <string>

#include <json.hpp>

#include "ldoi/detect.hpp"
#include "ldoi/maps.hpp"
#include "ldoi/triple.hpp"

namespace ldoi::io {

using json = nlohmann::json;

// {"rows": n, "cols": m, "data": [[re, im], ...]} in row-major order; entries may also be plain numbers.
json to_json(const Matrix& m);
Matrix matrix_from_json(const json& j);
// A matrix object with one column or row, or an array of numbers / [re, im] pairs.
Vector vector_from_json(const json& j);
json vector_to_json(const Vector& v);
cplx complex_from_json(const json& j);

json to_json(const MatrixTriple& t);
// B or C may be null or absent; a missing slot is filled with diag A and the class is reported.
MatrixTriple triple_from_json(const json& j, std::optional<InvariantClass>* inferred = nullptr);

json to_json(const CovariantMap& m);
CovariantMap map_from_json(const json& j);

json to_json(const TcpWitness& w);
TcpWitness witness_from_json(const json& j);

json to_json(const CertificateReport& r);
json to_json(const KrausSet& k);
KrausSet kraus_from_json(const json& j);
json to_json(const MapProperties& p);
json to_json(const Verdict& v);
json to_json(const CatalogReport& r);

std::vector<CatalogEntry> catalog_from_json(const json& j);

// Accepts a triple, a map {"class", "triple"} or a bundle {"state", "witness_map"}.
struct TripleInput {
  MatrixTriple triple;
  std::optional<InvariantClass> cls;
  bool is_map = false;
};
TripleInput read_triple_like(const json& j);

// Runs a gallery generator; states carry an extra "class" key, maps use the map encoding.
json gallery_generate(const std::string& family, const json& params);

json parse(const std::string& text);
std::string dump(const json& j);

}  // namespace ldoi::io

#endif
