#include "markovdim/dimfun.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "markovdim/plateau.hpp"

namespace markovdim {

std::uint64_t digest_forbidden(const ForbiddenSet& fs) {
  std::uint64_t h = 14695981039346656037ULL;
  auto mix = [&](std::uint8_t byte) {
    h ^= byte;
    h *= 1099511628211ULL;
  };
  for (const auto& w : fs.words) {
    for (auto d : w.digits) mix(d);
    mix(0);  // word separator
  }
  return h;
}

CheckpointRecord d_bounds(const mpq_class& s, int n, int m, double tol) {
  ForbidResult fr = forbidden_words(s, n);
  ForbiddenSet reduced = reduce(fr.forbidden);

  const std::size_t cap = static_cast<std::size_t>(m) + 1;
  ForbiddenSet outer, inner;
  for (const auto& w : reduced.words) {
    if (w.size() <= cap) {
      outer.add(w);
      inner.add(w);
    } else {
      // Too long for the m-block graph: dropping the word only enlarges the
      // set (upper bound stays valid); forbidding its prefix only shrinks it
      // (lower bound stays valid).
      inner.add(Word(std::vector<std::uint8_t>(w.digits.begin(),
                                               w.digits.begin() + cap)));
    }
  }
  inner = reduce(inner);

  CheckpointRecord rec;
  rec.s = s;
  rec.n = n;
  rec.s_prime = fr.s_prime;
  rec.forbidden_digest = digest_forbidden(reduced);

  DimEnclosure up = dim_enclosure(outer, m, tol);
  DimEnclosure lo =
      inner.words == outer.words ? up : dim_enclosure(inner, m, tol);
  rec.dim = DimEnclosure{lo.lo, up.hi, m, up.components};
  rec.d_upper = std::min(1.0, 2.0 * up.hi);
  rec.d_lower_at_s_prime = std::min(1.0, 2.0 * lo.lo);
  return rec;
}

SweepResult sweep(const mpq_class& a, const mpq_class& b,
                  const mpq_class& step, int n, int m, double tol,
                  const std::vector<CheckpointRecord>& extra) {
  if (step <= 0) throw std::invalid_argument("sweep: step must be positive");
  std::vector<mpq_class> grid;
  if (a == b) {
    grid.push_back(a);
  } else {
    for (mpq_class s = a + step; s < b; s += step) grid.push_back(s);
  }

  std::vector<std::future<CheckpointRecord>> jobs;
  jobs.reserve(grid.size());
  for (const auto& s : grid)
    jobs.push_back(std::async(std::launch::async,
                              [s, n, m, tol] { return d_bounds(s, n, m, tol); }));

  SweepResult out;
  for (auto& j : jobs) out.records.push_back(j.get());
  std::sort(out.records.begin(), out.records.end(),
            [](const CheckpointRecord& x, const CheckpointRecord& y) {
              return x.s < y.s;
            });

  // Lower staircase sources: every record we know about, global by design.
  std::vector<std::pair<double, double>> lows;  // (s', d_lower)
  for (const auto& r : out.records) lows.emplace_back(r.s_prime, r.d_lower_at_s_prime);
  for (const auto& r : extra) lows.emplace_back(r.s_prime, r.d_lower_at_s_prime);

  double run_up = 0.0;
  for (const auto& r : out.records) {
    run_up = std::max(run_up, r.d_upper);
    out.upper_envelope.push_back(run_up);
    double lo = 0.0;
    const double s = r.s.get_d();
    for (const auto& [sp, dl] : lows)
      if (sp < s) lo = std::max(lo, dl);
    out.lower_envelope.push_back(lo);
  }
  return out;
}

std::string sweep_to_csv(const SweepResult& result) {
  std::ostringstream os;
  os << "s,d_lower,d_upper\n";
  os.precision(10);
  for (std::size_t i = 0; i < result.records.size(); ++i)
    os << result.records[i].s.get_d() << ',' << result.lower_envelope[i] << ','
       << result.upper_envelope[i] << '\n';
  return os.str();
}

std::string checkpoint_to_json(const CheckpointRecord& rec) {
  nlohmann::json j;
  j["s"] = rec.s.get_d();
  j["n"] = rec.n;
  j["d_upper"] = rec.d_upper;
  j["s_prime"] = rec.s_prime;
  j["d_lower_at_s_prime"] = rec.d_lower_at_s_prime;
  j["dim_lo"] = rec.dim.lo;
  j["dim_hi"] = rec.dim.hi;
  j["m"] = rec.dim.m;
  j["forbidden_digest"] = rec.forbidden_digest;
  return j.dump(2);
}

GapInterval gap_interval(int i, int j) {
  const auto& order = occurrence_order();
  bool adjacent = false;
  for (std::size_t k = 0; k + 1 < order.size(); ++k)
    if (order[k] == i && order[k + 1] == j) adjacent = true;
  if (!adjacent)
    throw std::invalid_argument("gap_interval: plateaux " + std::to_string(i) +
                                " and " + std::to_string(j) +
                                " are not adjacent in the occurrence order");

  const mpz_class scale = 10000;
  mpz_class fb;  // floor(1e4 * b_i)
  if (i == 0) {
    mpq_class v = pseudo_right_endpoint_p0() * scale;
    fb = v.get_num() / v.get_den();
  } else {
    fb = plateau_by_index(i).right.floor_scaled(scale);
  }
  mpz_class fa;  // floor(1e4 * a_j)
  if (j == 1) {
    mpq_class v = pseudo_left_endpoint_p1() * scale;
    fa = v.get_num() / v.get_den();
  } else {
    fa = plateau_by_index(j).left.floor_scaled(scale);
  }

  GapInterval g;
  g.i = i;
  g.j = j;
  g.lo = mpq_class(fb - 1, scale);
  g.hi = mpq_class(fa + 1, scale);
  g.lo.canonicalize();
  g.hi.canonicalize();
  g.no_estimate_needed = mpq_class(g.hi - g.lo) < mpq_class(1, 200);
  return g;
}

double lambert_asymptotic(double eps) {
  if (!(eps > 0.0 && eps < 0.5))
    throw std::invalid_argument("lambert_asymptotic: eps must be in (0, 0.5)");
  const double c = 1.0 / std::log((3.0 + std::sqrt(5.0)) / 2.0);
  const double L = -std::log(eps);  // |log eps|
  const double x = c * L;
  double w = std::log1p(x);
  for (int it = 0; it < 100; ++it) {
    double ew = std::exp(w);
    double resid = w * ew - x;
    if (std::fabs(resid) < 1e-12) break;
    w -= resid / (ew * (w + 1.0));
  }
  return 2.0 * w / L;
}

}  // namespace markovdim
