#include "twotier/oracle.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "twotier/httl.hpp"

namespace twotier {

Scenario make_strip_scenario(std::vector<double> a, std::vector<double> b, int num_fcs,
                             double beta, double length, double height) {
  return Scenario(ConvexPolygon::rectangle({0.0, 0.0}, {length, height}), UniformDensity{},
                  std::move(a), std::move(b), num_fcs, beta);
}

namespace {

constexpr double kMinStep = 0.005;
constexpr double kMaxAspect = 1e-2;

void check_strip(const Scenario& s, double step) {
  const int n = s.num_aps();
  const int m = s.num_fcs();
  if (n > 3 || m > 2) {
    throw ValidationError("brute force supports at most 3 APs and 2 FCs, got N=" +
                          std::to_string(n) + ", M=" + std::to_string(m));
  }
  if (!(step >= kMinStep)) {
    throw ValidationError("brute-force step must be at least 0.005");
  }
  const ConvexPolygon& omega = s.omega();
  const BoundingBox& box = omega.bounds();
  if (omega.vertices().size() != 4 ||
      std::abs(omega.area() - box.area()) > 1e-12 * box.area()) {
    throw ValidationError("brute force needs an axis-aligned rectangular strip");
  }
  if (box.height() > kMaxAspect * box.width()) {
    throw ValidationError("brute-force strip must be thin (height <= 0.01 * length)");
  }
  if (step > box.width()) throw ValidationError("step exceeds the strip length");
}

class StripSearch {
 public:
  StripSearch(const Scenario& s, const Quadrature& quad, double step)
      : s_(s), quad_(quad), n_(s.num_aps()), m_(s.num_fcs()) {
    const BoundingBox& box = s.omega().bounds();
    const int last = static_cast<int>(std::floor(box.width() / step + 1e-9));
    for (int k = 0; k <= last; ++k) xs_.push_back(box.lo.x + k * step);
    y_ = 0.5 * (box.lo.y + box.hi.y);
    p_.assign(static_cast<std::size_t>(n_), Vec2{0.0, y_});
    pi_.assign(static_cast<std::size_t>(n_), 0);
    zeros_.assign(static_cast<std::size_t>(n_), 0.0);
    additive_.assign(static_cast<std::size_t>(n_), 0.0);
  }

  int positions() const { return static_cast<int>(xs_.size()); }

  void run(int stride) {
    stride_ = stride;
    enumerate_aps(0);
  }

  double best() const { return best_; }
  std::uint64_t evaluations() const { return evaluations_; }

  Deployment best_deployment() const {
    Deployment d;
    for (int k : best_p_) d.p.push_back({xs_[static_cast<std::size_t>(k)], y_});
    for (int k : best_q_) d.q.push_back({xs_[static_cast<std::size_t>(k)], y_});
    d.t = update_index_map(s_, d);
    return d;
  }

 private:
  void enumerate_aps(int n) {
    if (n == n_) {
      visit_ap_tuple();
      return;
    }
    for (int k = 0; k < positions(); k += stride_) {
      pi_[static_cast<std::size_t>(n)] = k;
      p_[static_cast<std::size_t>(n)].x = xs_[static_cast<std::size_t>(k)];
      enumerate_aps(n + 1);
    }
  }

  void visit_ap_tuple() {
    // Every AP-tier term is nonnegative and the distortion is monotone in
    // them, so the one-tier value bounds all FC placements from below.
    const double bound = envelope_distortion(quad_, s_.a_weights(), p_, zeros_);
    if (bound > best_) return;
    int lo = pi_[0];
    int hi = pi_[0];
    for (int k : pi_) {
      lo = std::min(lo, k);
      hi = std::max(hi, k);
    }
    fc_slots_.clear();
    for (int k = lo; k <= hi; k += stride_) fc_slots_.push_back(k);
    std::vector<int> lo_slot(static_cast<std::size_t>(m_), 0);
    std::vector<int> hi_slot(static_cast<std::size_t>(m_), static_cast<int>(fc_slots_.size()) - 1);
    search_fcs(lo_slot, hi_slot);
  }

  // Branch and bound over boxes of FC slots. Every distortion term grows
  // with the additive terms, so the distance from each AP to the nearest
  // point of each FC's slot range yields a lower bound for the whole box.
  // Boxes are split on their first wide axis, lower half first, so leaves
  // are reached in lexicographic order.
  void search_fcs(std::vector<int>& lo, std::vector<int>& hi) {
    int axis = -1;
    for (int m = 0; m < m_; ++m) {
      if (lo[static_cast<std::size_t>(m)] < hi[static_cast<std::size_t>(m)]) {
        axis = m;
        break;
      }
    }
    for (int n = 0; n < n_; ++n) {
      const double px = p_[static_cast<std::size_t>(n)].x;
      double link = std::numeric_limits<double>::infinity();
      for (int m = 0; m < m_; ++m) {
        const double x_lo = slot_x(lo[static_cast<std::size_t>(m)]);
        const double x_hi = slot_x(hi[static_cast<std::size_t>(m)]);
        const double gap = px < x_lo ? x_lo - px : (px > x_hi ? px - x_hi : 0.0);
        link = std::min(link, s_.b(n, m) * gap * gap);
      }
      additive_[static_cast<std::size_t>(n)] = s_.beta() * link;
    }
    const double value = envelope_distortion(quad_, s_.a_weights(), p_, additive_);
    if (axis < 0) {
      ++evaluations_;
      if (value < best_) {
        best_ = value;
        best_p_ = pi_;
        best_q_.resize(static_cast<std::size_t>(m_));
        for (int m = 0; m < m_; ++m) {
          best_q_[static_cast<std::size_t>(m)] =
              fc_slots_[static_cast<std::size_t>(lo[static_cast<std::size_t>(m)])];
        }
      }
      return;
    }
    if (value > best_) return;
    const auto a = static_cast<std::size_t>(axis);
    const int old_lo = lo[a];
    const int old_hi = hi[a];
    const int mid = old_lo + (old_hi - old_lo) / 2;
    hi[a] = mid;
    search_fcs(lo, hi);
    hi[a] = old_hi;
    lo[a] = mid + 1;
    search_fcs(lo, hi);
    lo[a] = old_lo;
  }

  double slot_x(int slot) const {
    return xs_[static_cast<std::size_t>(fc_slots_[static_cast<std::size_t>(slot)])];
  }

  const Scenario& s_;
  const Quadrature& quad_;
  int n_;
  int m_;
  int stride_ = 1;
  std::vector<double> xs_;
  double y_ = 0.0;
  std::vector<Vec2> p_;
  std::vector<int> pi_, fc_slots_, best_p_, best_q_;
  std::vector<double> zeros_, additive_;
  double best_ = std::numeric_limits<double>::infinity();
  std::uint64_t evaluations_ = 0;
};

}  // namespace

BruteForceResult brute_force_1d(const Scenario& s, double step, const BruteForceOptions& opts) {
  check_strip(s, step);
  const Quadrature quad =
      build_quadrature(s, Integrator{IntegratorMode::MidpointGrid, opts.resolution, 0, 1});
  StripSearch search(s, quad, step);
  const double candidates =
      std::pow(static_cast<double>(search.positions()), s.num_aps() + s.num_fcs());
  if (candidates > opts.max_candidates) {
    std::ostringstream msg;
    msg << "brute force refused: about " << candidates << " candidates exceed the budget of "
        << opts.max_candidates;
    throw EnumerationTooLarge(msg.str(), candidates);
  }
  const int last = search.positions() - 1;
  if (opts.coarse_factor > 1 && last % opts.coarse_factor == 0) {
    search.run(opts.coarse_factor);
  }
  search.run(1);

  BruteForceResult result;
  result.best = search.best_deployment();
  result.distortion = search.best();
  result.grid_step = step;
  result.evaluations = search.evaluations();
  const Evaluation e = evaluate(quad, s, result.best);
  result.report = e.report;
  result.moments = e.moments;
  return result;
}

FcIncrementResult fc_increment_check(const Scenario& s, double step,
                                     const BruteForceOptions& opts) {
  const int m = s.num_fcs() - 1;
  if (m < 1) throw ValidationError("fc_increment_check needs at least 2 FCs in the scenario");
  if (m >= s.num_aps()) throw ValidationError("fc_increment_check needs M < N");
  FcIncrementResult out;
  out.fewer = brute_force_1d(s.with_fc_count(m), step, opts);
  out.more = brute_force_1d(s, step, opts);
  out.fc_volume.assign(static_cast<std::size_t>(s.num_fcs()), 0.0);
  for (std::size_t n = 0; n < out.more.best.t.size(); ++n) {
    out.fc_volume[static_cast<std::size_t>(out.more.best.t[n])] += out.more.moments.v[n];
  }
  return out;
}

}  // namespace twotier
