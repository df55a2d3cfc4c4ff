#include "twotier/voronoi.hpp"

#include <stdexcept>
#include <string>

namespace twotier {

namespace {

double additive_term(const Scenario& s, const Deployment& d, int n) {
  const auto i = static_cast<std::size_t>(n);
  const int m = d.t[i];
  return s.beta() * s.b(n, m) * dist2(d.p[i], d.q[static_cast<std::size_t>(m)]);
}

void check_index(int n, const Scenario& s, const char* what) {
  if (n < 0 || n >= s.num_aps()) {
    throw std::out_of_range(std::string(what) + ": AP index " +
                            std::to_string(n) + " out of range");
  }
}

}  // namespace

GeneralizedVoronoi::GeneralizedVoronoi(const Scenario& s, const Deployment& d)
    : a_(s.a_weights()), p_(d.p) {
  k_.resize(a_.size());
  for (int n = 0; n < s.num_aps(); ++n) k_[static_cast<std::size_t>(n)] = additive_term(s, d, n);
}

GeneralizedVoronoi::GeneralizedVoronoi(std::vector<double> a, std::vector<Vec2> p,
                                       std::vector<double> additive)
    : a_(std::move(a)), p_(std::move(p)), k_(std::move(additive)) {
  if (a_.empty() || a_.size() != p_.size() || a_.size() != k_.size()) {
    throw std::invalid_argument("GeneralizedVoronoi: inconsistent sizes");
  }
}

double cell_cost(int n, Vec2 w, const Scenario& s, const Deployment& d) {
  check_index(n, s, "cell_cost");
  const auto i = static_cast<std::size_t>(n);
  return s.a(n) * dist2(d.p[i], w) + additive_term(s, d, n);
}

int owner(Vec2 w, const Scenario& s, const Deployment& d) {
  return GeneralizedVoronoi(s, d).owner(w);
}

const char* to_string(RegionKind kind) {
  switch (kind) {
    case RegionKind::HalfSpace: return "HalfSpace";
    case RegionKind::Disk: return "Disk";
    case RegionKind::DiskComplement: return "DiskComplement";
    case RegionKind::Empty: return "Empty";
    case RegionKind::WholePlane: return "WholePlane";
  }
  return "?";
}

bool PairwiseRegion::contains(Vec2 w) const {
  switch (kind) {
    case RegionKind::HalfSpace: return dot(normal, w) + offset <= 0.0;
    case RegionKind::Disk: return dist2(w, center) <= l;
    case RegionKind::DiskComplement: return dist2(w, center) >= l;
    case RegionKind::Empty: return false;
    case RegionKind::WholePlane: return true;
  }
  return false;
}

PairwiseRegion pairwise_region(int i, int j, const Scenario& s, const Deployment& d) {
  check_index(i, s, "pairwise_region");
  check_index(j, s, "pairwise_region");
  if (i == j) throw std::domain_error("pairwise_region: i == j");
  const double ai = s.a(i);
  const double aj = s.a(j);
  const Vec2 pi = d.p[static_cast<std::size_t>(i)];
  const Vec2 pj = d.p[static_cast<std::size_t>(j)];
  const double ki = additive_term(s, d, i);
  const double kj = additive_term(s, d, j);

  PairwiseRegion region;
  if (ai == aj) {
    region.kind = RegionKind::HalfSpace;
    region.normal = aj * pj - ai * pi;
    region.offset = 0.5 * (ai * norm2(pi) - aj * norm2(pj) + ki - kj);
    return region;
  }
  const double diff = ai - aj;
  region.center = (ai * pi - aj * pj) / diff;
  region.l = ai * aj * dist2(pi, pj) / (diff * diff) - (ki - kj) / diff;
  region.radius = region.l >= 0.0 ? std::sqrt(region.l) : 0.0;
  if (diff > 0.0) {
    region.kind = region.l >= 0.0 ? RegionKind::Disk : RegionKind::Empty;
  } else {
    region.kind = region.l >= 0.0 ? RegionKind::DiskComplement : RegionKind::WholePlane;
  }
  return region;
}

double membership_agreement(const Scenario& s, const Deployment& d,
                            std::span<const Vec2> samples) {
  if (samples.empty()) throw std::invalid_argument("membership_agreement: no samples");
  const int n = s.num_aps();
  std::vector<PairwiseRegion> regions(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j) regions[static_cast<std::size_t>(i) * n + j] = pairwise_region(i, j, s, d);
    }
  }
  const GeneralizedVoronoi cells(s, d);
  std::size_t agree = 0;
  for (const Vec2& w : samples) {
    const int direct = cells.owner(w);
    bool ok = true;
    for (int k = 0; k < n && ok; ++k) {
      bool inside = true;
      for (int j = 0; j < n && inside; ++j) {
        if (j != k) inside = regions[static_cast<std::size_t>(k) * n + j].contains(w);
      }
      ok = (inside == (k == direct));
    }
    if (ok) ++agree;
  }
  return static_cast<double>(agree) / static_cast<double>(samples.size());
}

}  // namespace twotier
