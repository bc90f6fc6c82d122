#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "argmin/pathsim.hpp"

namespace argmin {

enum class JumpKind { zero_to_interior, interior_to_one, anomaly };

struct Jump {
  double time = 0.0;
  double from_level = 0.0;
  double to_level = 0.0;
  JumpKind kind = JumpKind::anomaly;
};

// Grid view of the argmin location process: samples[k] is the distance from
// grid time k*dt to the last minimizer of the path over the next unit window.
struct ArgminTrajectory {
  double dt = 0.0;
  double window = 1.0;
  std::vector<double> samples;  // each in [0, window]
  std::vector<Jump> jumps;
};

// samples[k] = dt * (last argmin index over path[k..k+m] - k), m = window/dt.
// Ties break toward the larger index. Runs in O(n) via a monotone deque.
// Throws WindowTooLarge / NonIntegerWindow.
ArgminTrajectory argmin_trajectory(const SampledPath& path, double window);

// A jump is any step rising faster than the unit downward drift allows:
// samples[k+1] - (samples[k] - dt) > 2 dt. Classified zero_to_interior when
// samples[k] <= 2 dt (checked first), interior_to_one when
// samples[k+1] >= window - 2 dt, anomaly otherwise. Anomalies are data, not errors.
std::vector<Jump> detect_jumps(const ArgminTrajectory& traj);

struct GapSummary {
  double delta = 0.0;  // T_{i+1} - T_i
  // Probes of the renewal construction: restart past each rejected forward
  // meander until one also clears its backward window. Geometric, rate 2/pi
  // in the (1,1) Brownian case.
  std::size_t n_le = 0;
  double h_increment = 0.0;  // path(T_{i+1}) - path(T_i)
};

struct ExtremaDecomposition {
  double a = 0.0;
  double b = 0.0;
  double dt = 0.0;
  std::vector<double> T;   // two-sided (a,b)-minima
  std::vector<double> G;   // per gap: last left meander end before D_i
  std::vector<double> D;   // per gap: first right meander end after T_i
  std::vector<double> LE;  // left ends of forward meanders of length b
  std::vector<double> RE;  // right ends of backward meanders of length a
  std::vector<GapSummary> gaps;
};

// T collects grid times whose value is <= the minimum over the previous a and
// strictly below the minimum over the next b (last-index tie-break). For a=b
// the LE/RE sets and the per-gap G_i, D_i, N_i, H_i are filled as well. The
// first a and last b units of the path are excluded. Throws HorizonTooShort.
ExtremaDecomposition extract_ab_minima(const SampledPath& path, double a, double b);

struct LadderRecord {
  double J = 0.0;
  SampledPath meander_segment;  // (B - running min) over [J, J+1], starts at 0
};

// First descending ladder time whose excursion above the running minimum
// lasts longer than one time unit on the grid. Throws NotFound when the path
// ends before any such excursion completes.
LadderRecord extract_first_long_ladder(const SampledPath& path);

struct GapStatistics {
  double delta = 0.0;
  double g_minus_t = 0.0;
  double d_minus_g = 0.0;
  double next_t_minus_d = 0.0;
  std::size_t n_le = 0;
  double h_increment = 0.0;
};

// Per-gap breakdown for the (1,1) case; DomainError otherwise.
std::vector<GapStatistics> gap_statistics(const ExtremaDecomposition& dec);

// CSV columns (i, T, G, D, delta, N, H), 12 significant digits.
void write_decomposition_csv(const ExtremaDecomposition& dec, std::ostream& out);

}  // namespace argmin
