#include "argmin/extract.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <deque>
#include <limits>
#include <ostream>

#include "argmin/errors.hpp"

namespace argmin {

namespace {

// window/dt as an exact small integer, or -1.
long long as_grid_count(double span, double dt) {
  if (!(dt > 0.0) || !(span > 0.0)) {
    return -1;
  }
  double ratio = span / dt;
  double rounded = std::floor(ratio + 0.5);
  if (std::fabs(ratio - rounded) > 1e-9 * std::max(1.0, ratio) || rounded < 1.0) {
    return -1;
  }
  return static_cast<long long>(rounded);
}

// Sliding last-argmin over windows of m+1 samples. emit(k, j) receives the
// window start k and the argmin index j for every k in [0, n-m].
template <typename Emit>
void sliding_last_argmin(const std::vector<double>& v, std::size_t m, Emit emit) {
  std::deque<std::size_t> q;  // indices, values strictly increasing front to back
  std::size_t n = v.size() - 1;
  for (std::size_t j = 0; j <= n; ++j) {
    // >= pops equal values, so the front always holds the last tied minimum.
    while (!q.empty() && v[q.back()] >= v[j]) {
      q.pop_back();
    }
    q.push_back(j);
    if (j >= m) {
      std::size_t k = j - m;
      if (q.front() < k) {
        q.pop_front();
      }
      emit(k, q.front());
    }
  }
}

// prev_min[j] = min over the ma samples before j (j >= ma),
// next_min[j] = min over the mb samples after j (j + mb <= n).
std::vector<double> window_min_before(const std::vector<double>& v, std::size_t ma) {
  std::vector<double> out(v.size(), 0.0);
  std::deque<std::size_t> q;
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (j >= ma) {
      while (!q.empty() && q.front() + ma < j) {
        q.pop_front();
      }
      out[j] = v[q.front()];
    }
    while (!q.empty() && v[q.back()] >= v[j]) {
      q.pop_back();
    }
    q.push_back(j);
  }
  return out;
}

std::vector<double> window_min_after(const std::vector<double>& v, std::size_t mb) {
  std::vector<double> out(v.size(), 0.0);
  std::deque<std::size_t> q;
  std::size_t n = v.size() - 1;
  for (std::size_t step = 0; step <= n; ++step) {
    std::size_t j = n - step;
    if (j + mb <= n) {
      while (!q.empty() && q.front() > j + mb) {
        q.pop_front();
      }
      out[j] = v[q.front()];
    }
    while (!q.empty() && v[q.back()] >= v[j]) {
      q.pop_back();
    }
    q.push_back(j);
  }
  return out;
}

}  // namespace

ArgminTrajectory argmin_trajectory(const SampledPath& path, double window) {
  long long m = as_grid_count(window, path.dt);
  if (m < 2) {
    throw NonIntegerWindow("argmin_trajectory: window/dt must be an integer >= 2");
  }
  std::size_t n = path.steps();
  if (n < static_cast<std::size_t>(m)) {
    throw WindowTooLarge("argmin_trajectory: path shorter than the window");
  }
  ArgminTrajectory traj;
  traj.dt = path.dt;
  traj.window = window;
  traj.samples.resize(n - static_cast<std::size_t>(m) + 1);
  sliding_last_argmin(path.values, static_cast<std::size_t>(m),
                      [&](std::size_t k, std::size_t j) {
                        traj.samples[k] = path.dt * static_cast<double>(j - k);
                      });
  traj.jumps = detect_jumps(traj);
  return traj;
}

std::vector<Jump> detect_jumps(const ArgminTrajectory& traj) {
  std::vector<Jump> jumps;
  double dt = traj.dt;
  double top = traj.window;
  for (std::size_t k = 0; k + 1 < traj.samples.size(); ++k) {
    double from = traj.samples[k];
    double to = traj.samples[k + 1];
    if (to - (from - dt) > 2.0 * dt) {
      Jump jump;
      jump.time = static_cast<double>(k) * dt;
      jump.from_level = from;
      jump.to_level = to;
      if (from <= 2.0 * dt) {
        jump.kind = JumpKind::zero_to_interior;
      } else if (to >= top - 2.0 * dt) {
        jump.kind = JumpKind::interior_to_one;
      } else {
        jump.kind = JumpKind::anomaly;
      }
      jumps.push_back(jump);
    }
  }
  return jumps;
}

ExtremaDecomposition extract_ab_minima(const SampledPath& path, double a, double b) {
  long long ma = as_grid_count(a, path.dt);
  long long mb = as_grid_count(b, path.dt);
  if (ma < 1 || mb < 1) {
    throw DomainError("extract_ab_minima: a/dt and b/dt must be positive integers");
  }
  std::size_t n = path.steps();
  if (n <= static_cast<std::size_t>(ma + mb)) {
    throw HorizonTooShort("extract_ab_minima: horizon must exceed a+b");
  }
  const std::vector<double>& v = path.values;
  std::vector<double> prev_min = window_min_before(v, static_cast<std::size_t>(ma));
  std::vector<double> next_min = window_min_after(v, static_cast<std::size_t>(mb));

  ExtremaDecomposition dec;
  dec.a = a;
  dec.b = b;
  dec.dt = path.dt;
  auto time_at = [&](std::size_t j) { return path.t0 + path.dt * static_cast<double>(j); };

  std::vector<std::size_t> t_idx, le_idx, re_idx;
  for (std::size_t j = static_cast<std::size_t>(ma); j + static_cast<std::size_t>(mb) <= n;
       ++j) {
    if (v[j] <= prev_min[j] && v[j] < next_min[j]) {
      t_idx.push_back(j);
    }
  }
  for (std::size_t j = 0; j + static_cast<std::size_t>(mb) <= n; ++j) {
    if (v[j] < next_min[j]) {
      le_idx.push_back(j);
    }
  }
  for (std::size_t j = static_cast<std::size_t>(ma); j <= n; ++j) {
    if (v[j] < prev_min[j]) {
      re_idx.push_back(j);
    }
  }
  for (std::size_t j : t_idx) {
    dec.T.push_back(time_at(j));
  }
  for (std::size_t j : le_idx) {
    dec.LE.push_back(time_at(j));
  }
  for (std::size_t j : re_idx) {
    dec.RE.push_back(time_at(j));
  }

  // Per complete gap: D_i is the first strict backward minimum after T_i and
  // G_i the last strict forward minimum before D_i; T_i itself is one, so G_i
  // always exists. With real-valued increments T_{i+1} is a strict backward
  // minimum too, so D_i <= T_{i+1}; the clamp only matters under exact ties.
  std::size_t re_pos = 0;
  std::size_t le_pos = 0;
  for (std::size_t i = 0; i + 1 < t_idx.size(); ++i) {
    std::size_t lo = t_idx[i];
    std::size_t hi = t_idx[i + 1];
    while (re_pos < re_idx.size() && re_idx[re_pos] <= lo) {
      ++re_pos;
    }
    std::size_t d = (re_pos < re_idx.size()) ? std::min(re_idx[re_pos], hi) : hi;
    while (le_pos + 1 < le_idx.size() && le_idx[le_pos + 1] < d) {
      ++le_pos;
    }
    std::size_t g = le_idx[le_pos];
    // Renewal construction probe count. Starting at T_i + b, scan for the
    // first new running minimum of the restarted segment whose forward
    // window of length b is clear; accept it when its backward window of
    // length a is clear too (that point is T_{i+1}), otherwise restart just
    // past the forward window. The count of probes is the geometric N.
    std::size_t n_probe = 0;
    std::size_t pos = lo + static_cast<std::size_t>(mb);
    while (true) {
      ++n_probe;
      if (pos >= hi) {
        break;
      }
      double run_min = std::numeric_limits<double>::infinity();
      std::size_t j = pos;
      for (; j < hi; ++j) {
        if (v[j] < run_min && v[j] < next_min[j]) {
          break;
        }
        run_min = std::min(run_min, v[j]);
      }
      if (j >= hi || v[j] < prev_min[j]) {
        break;
      }
      pos = j + static_cast<std::size_t>(mb);
    }
    dec.D.push_back(time_at(d));
    dec.G.push_back(time_at(g));
    GapSummary gap;
    gap.delta = time_at(hi) - time_at(lo);
    gap.n_le = n_probe;
    gap.h_increment = v[hi] - v[lo];
    dec.gaps.push_back(gap);
  }
  return dec;
}

LadderRecord extract_first_long_ladder(const SampledPath& path) {
  long long m = as_grid_count(1.0, path.dt);
  if (m < 2) {
    throw DomainError("extract_first_long_ladder: 1/dt must be an integer >= 2");
  }
  std::size_t n = path.steps();
  const std::vector<double>& v = path.values;
  std::size_t window = static_cast<std::size_t>(m);

  auto accept = [&](std::size_t j) {
    LadderRecord rec;
    rec.J = path.t0 + path.dt * static_cast<double>(j);
    rec.meander_segment.t0 = rec.J;
    rec.meander_segment.dt = path.dt;
    rec.meander_segment.values.resize(window + 1);
    for (std::size_t i = 0; i <= window; ++i) {
      rec.meander_segment.values[i] = v[j + i] - v[j];
    }
    return rec;
  };

  // Successive strict running minima; each one ends the previous excursion.
  std::size_t prev = 0;
  double running = v[0];
  for (std::size_t j = 1; j <= n; ++j) {
    if (v[j] < running) {
      if (j - prev > window) {
        return accept(prev);
      }
      running = v[j];
      prev = j;
    }
  }
  if (n - prev > window) {
    return accept(prev);  // excursion still open but already longer than 1
  }
  throw NotFound("extract_first_long_ladder: no excursion longer than 1 completed");
}

std::vector<GapStatistics> gap_statistics(const ExtremaDecomposition& dec) {
  if (dec.a != 1.0 || dec.b != 1.0) {
    throw DomainError("gap_statistics: defined for unit (1,1) windows");
  }
  std::vector<GapStatistics> stats;
  stats.reserve(dec.gaps.size());
  for (std::size_t i = 0; i < dec.gaps.size(); ++i) {
    GapStatistics s;
    s.delta = dec.gaps[i].delta;
    s.g_minus_t = dec.G[i] - dec.T[i];
    s.d_minus_g = dec.D[i] - dec.G[i];
    s.next_t_minus_d = dec.T[i + 1] - dec.D[i];
    s.n_le = dec.gaps[i].n_le;
    s.h_increment = dec.gaps[i].h_increment;
    stats.push_back(s);
  }
  return stats;
}

void write_decomposition_csv(const ExtremaDecomposition& dec, std::ostream& out) {
  out << "i,T,G,D,delta,N,H\n";
  char buf[160];
  for (std::size_t i = 0; i < dec.gaps.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%zu,%.12g,%.12g,%.12g,%.12g,%zu,%.12g\n", i,
                  dec.T[i], dec.G[i], dec.D[i], dec.gaps[i].delta, dec.gaps[i].n_le,
                  dec.gaps[i].h_increment);
    out << buf;
  }
}

}  // namespace argmin
