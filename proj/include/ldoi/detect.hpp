#ifndef LDOI_DETECT_HPP
#define LDOI_DETECT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ldoi/cones.hpp"
#include "ldoi/maps.hpp"

namespace ldoi {

struct CatalogEntry {
  std::string id;
  CovariantMap map;
};

// transposition, choi_cho(1, mu, 0) for the mu grid (d = 3 only), lambda(d), tau(d, k) for k < d.
std::vector<CatalogEntry> default_catalog(Index d, const std::vector<double>& mu_grid = {1.0, 2.0, 5.0});

struct CatalogEntryReport {
  std::string id;
  bool accepted = false;
  std::string reason;
  std::optional<FalsifierResult> counterexample;
};
struct CatalogReport {
  std::vector<CatalogEntryReport> entries;
  bool all_accepted() const;
};
// Screens each entry with positivity_necessary and positivity_falsifier(budget, seed).
CatalogReport witness_catalog_validate(const std::vector<CatalogEntry>& catalog, std::int64_t budget,
                                       std::uint64_t seed, const Tolerance& tol = {});

enum class Outcome { SEPARABLE, ENTANGLED, UNDECIDED };
std::string to_string(Outcome o);

struct DetectingMap {
  std::string id;
  double min_eigenvalue;
};

struct Verdict {
  Outcome outcome = Outcome::UNDECIDED;
  std::string method;                  // deciding test, certificate or witness map
  std::optional<TcpWitness> witness;   // SEPARABLE with a constructive certificate
  double margin = 0.0;                 // signed margin of the deciding test
  std::vector<std::string> failed;     // ENTANGLED by a necessary test: the failed items
  std::string map_id;                  // ENTANGLED by a witness map
  double min_eigenvalue = 0.0;
  std::vector<std::string> inconclusive;
  std::vector<DetectingMap> detecting_maps;  // every catalog map whose partial action is not PSD
  std::vector<std::string> rejected_maps;    // catalog entries dropped by screening
};

struct DetectConfig {
  std::vector<CatalogEntry> catalog;  // empty: default_catalog(d, mu_grid)
  std::vector<double> mu_grid{1.0, 2.0, 5.0};
  Tolerance tol;
  std::optional<std::int64_t> budget;  // screening budget; requires a seed
  std::optional<std::uint64_t> seed;
  int jobs = 1;
};

Verdict separability_verdict(const MatrixTriple& t, const DetectConfig& config = {});

}  // namespace ldoi

#endif
