#include "ldoi/detect.hpp"

#include <algorithm>
#include <future>
#include <sstream>

#include "ldoi/gallery.hpp"

namespace ldoi {

namespace {

std::string num(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

std::vector<std::string> failed_items(const CertificateReport& r) {
  std::vector<std::string> out;
  for (const auto& it : r.items)
    if (it.status == TestStatus::fail) out.push_back(it.name);
  return out;
}

double min_margin(const CertificateReport& r) {
  double m = 0.0;
  bool any = false;
  for (const auto& it : r.items) {
    m = any ? std::min(m, it.margin) : it.margin;
    any = true;
  }
  return m;
}

struct MapCheck {
  bool detects = false;
  double min_eigenvalue = 0.0;
};

MapCheck check_map(const CovariantMap& m, const MatrixTriple& t, const Tolerance& tol) {
  const MatrixTriple out = partial_action(m, t);
  MapCheck c;
  c.detects = !psd_test(out, tol).passed();
  c.min_eigenvalue = min_eigenvalue(out, InvariantClass::LDOI);
  return c;
}

}  // namespace

std::vector<CatalogEntry> default_catalog(Index d, const std::vector<double>& mu_grid) {
  if (d < 2) return {};
  std::vector<CatalogEntry> out;
  out.push_back(CatalogEntry{"transposition", gallery::transposition(d)});
  if (d == 3)
    for (double mu : mu_grid)
      out.push_back(CatalogEntry{"choi_cho(1," + num(mu) + ",0)", gallery::choi_cho(1.0, mu, 0.0)});
  out.push_back(CatalogEntry{"lambda(" + std::to_string(d) + ")", gallery::lambda(d)});
  for (Index k = 1; k < d; ++k)
    out.push_back(
        CatalogEntry{"tau(" + std::to_string(d) + "," + std::to_string(k) + ")", gallery::tau(d, k)});
  return out;
}

bool CatalogReport::all_accepted() const {
  return std::all_of(entries.begin(), entries.end(), [](const CatalogEntryReport& e) { return e.accepted; });
}

CatalogReport witness_catalog_validate(const std::vector<CatalogEntry>& catalog, std::int64_t budget,
                                       std::uint64_t seed, const Tolerance& tol) {
  CatalogReport rep;
  for (std::size_t k = 0; k < catalog.size(); ++k) {
    const CatalogEntry& e = catalog[k];
    CatalogEntryReport r;
    r.id = e.id;
    const MatrixTriple t = promote(e.map.cls, e.map.triple);
    CertificateReport nec = positivity_necessary(t, tol);
    FalsifierResult f = positivity_falsifier(t, budget, seed + k, tol);
    if (!nec.passed()) {
      r.reason = "necessary positivity condition fails";
      for (const auto& name : failed_items(nec)) r.reason += " " + name;
    } else if (f.found) {
      r.reason = "falsifier found a negative pairing";
    } else {
      r.accepted = true;
      r.reason = "screened";
    }
    if (f.found) r.counterexample = f;
    rep.entries.push_back(std::move(r));
  }
  return rep;
}

std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::SEPARABLE:
      return "SEPARABLE";
    case Outcome::ENTANGLED:
      return "ENTANGLED";
    case Outcome::UNDECIDED:
      return "UNDECIDED";
  }
  return "UNDECIDED";
}

Verdict separability_verdict(const MatrixTriple& t, const DetectConfig& config) {
  const Tolerance& tol = config.tol;
  validate(t, tol);
  CertificateReport psd = psd_test(t, tol);
  if (!psd.passed()) throw ValidationError("triple is not PSD, so it is not a state candidate");
  if (config.budget && !config.seed) throw ValidationError("a screening budget needs a seed");

  std::vector<CatalogEntry> catalog = config.catalog.empty() ? default_catalog(t.dim(), config.mu_grid) : config.catalog;
  Verdict v;
  if (config.budget) {
    CatalogReport screen = witness_catalog_validate(catalog, *config.budget, *config.seed, tol);
    std::vector<CatalogEntry> kept;
    for (std::size_t k = 0; k < catalog.size(); ++k) {
      if (screen.entries[k].accepted)
        kept.push_back(catalog[k]);
      else
        v.rejected_maps.push_back(catalog[k].id);
    }
    catalog = std::move(kept);
  }
  for (const auto& e : catalog)
    if (e.map.dim() != t.dim()) throw ValidationError("catalog map '" + e.id + "' has the wrong dimension");

  // Catalog results are computed first and merged in catalog order.
  std::vector<MapCheck> checks(catalog.size());
  const int jobs = std::max(1, config.jobs);
  if (jobs == 1 || catalog.size() < 2) {
    for (std::size_t k = 0; k < catalog.size(); ++k) checks[k] = check_map(catalog[k].map, t, tol);
  } else {
    for (std::size_t start = 0; start < catalog.size(); start += static_cast<std::size_t>(jobs)) {
      std::vector<std::future<MapCheck>> fs;
      const std::size_t stop = std::min(catalog.size(), start + static_cast<std::size_t>(jobs));
      for (std::size_t k = start; k < stop; ++k)
        fs.push_back(std::async(std::launch::async, check_map, std::cref(catalog[k].map), std::cref(t), tol));
      for (std::size_t k = start; k < stop; ++k) checks[k] = fs[k - start].get();
    }
  }
  for (std::size_t k = 0; k < catalog.size(); ++k)
    if (checks[k].detects) v.detecting_maps.push_back(DetectingMap{catalog[k].id, checks[k].min_eigenvalue});

  CertificateReport ppt = ppt_test(t, tol);
  if (!ppt.passed()) {
    v.outcome = Outcome::ENTANGLED;
    v.method = "ppt";
    v.failed = failed_items(ppt);
    v.margin = min_margin(ppt);
    return v;
  }
  CertificateReport realign = realignment_test(t, tol);
  if (!realign.passed()) {
    v.outcome = Outcome::ENTANGLED;
    v.method = "realignment";
    v.failed = failed_items(realign);
    v.margin = min_margin(realign);
    return v;
  }
  CertificateReport battery = tcp_necessary_battery(t, tol);
  if (!battery.passed()) {
    v.outcome = Outcome::ENTANGLED;
    v.method = "tcp_necessary_battery";
    v.failed = failed_items(battery);
    v.margin = min_margin(battery);
    return v;
  }
  if (auto cert = certify_tcp(t, tol)) {
    v.outcome = Outcome::SEPARABLE;
    v.method = cert->method;
    v.witness = cert->witness;
    v.margin = cert->margin;
    return v;
  }
  for (std::size_t k = 0; k < catalog.size(); ++k)
    if (checks[k].detects) {
      v.outcome = Outcome::ENTANGLED;
      v.method = "witness_map";
      v.map_id = catalog[k].id;
      v.min_eigenvalue = checks[k].min_eigenvalue;
      v.margin = checks[k].min_eigenvalue;
      return v;
    }
  v.outcome = Outcome::UNDECIDED;
  v.inconclusive = {"gurvits_ball", "dplusone_row", "dplusone_col", "pcp_constructions"};
  for (const auto& e : catalog) v.inconclusive.push_back("map:" + e.id);
  return v;
}

}  // namespace ldoi
