#include "argmin/chain.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <utility>
#include <vector>

#include "argmin/errors.hpp"

namespace argmin {

namespace {

Rational rat_abs(const Rational& r) { return r < Rational(0) ? -r : r; }

double to_double(const Rational& r) { return boost::rational_cast<double>(r); }

long long binom(long long n, long long k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  long long r = 1;
  for (long long i = 1; i <= k; ++i) r = r * (n - k + i) / i;  // exact: r holds C(n-k+i, i)
  return r;
}

// Central binomial probability C(2m,m)/4^m as a product of odd/even ratios.
double central_prob(std::size_t m) {
  double c = 1.0;
  for (std::size_t i = 1; i <= m; ++i)
    c *= static_cast<double>(2 * i - 1) / static_cast<double>(2 * i);
  return c;
}

Rational central_prob_exact(std::size_t m) {
  return Rational(binom(2 * static_cast<long long>(m), static_cast<long long>(m)),
                  1LL << (2 * m));
}

// Shared invariant enforcement for the analytic constructors: ladder arrays
// monotone, transition rows stochastic, stationary law actually stationary.
void validate_chain_law(const ChainLaw& law) {
  const std::size_t N = law.N;
  for (std::size_t n = 0; n + 1 < law.p.size(); ++n) {
    if (law.p[n + 1] > law.p[n] + 1e-12 || law.p_tilde[n + 1] > law.p_tilde[n] + 1e-12)
      throw DomainError("chain law: marginals inconsistent with a random walk");
  }
  for (std::size_t i = 0; i <= N; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j <= N; ++j) {
      const double v = law.P[i][j];
      if (v < -1e-12 || v > 1.0 + 1e-12)
        throw DomainError("chain law: transition entry outside [0,1]");
      row += v;
    }
    if (std::abs(row - 1.0) > 1e-12) throw DomainError("chain law: row not stochastic");
  }
  double total = 0.0;
  for (double v : law.pi) total += v;
  if (std::abs(total - 1.0) > 1e-12)
    throw DomainError("chain law: stationary masses do not sum to one");
  for (std::size_t j = 0; j <= N; ++j) {
    double flow = 0.0;
    for (std::size_t i = 0; i <= N; ++i) flow += law.pi[i] * law.P[i][j];
    if (std::abs(flow - law.pi[j]) > 1e-12)
      throw DomainError("chain law: stationary law not preserved");
  }
}

void clamp_rows(ChainLaw& law) {
  for (auto& row : law.P)
    for (double& v : row) v = std::min(std::max(v, 0.0), 1.0);
}

}  // namespace

LadderProbs ladder_probs(const WalkLawInput& input) {
  const std::size_t M = input.prob_ge.size();
  if (M == 0 || input.prob_gt.size() != M)
    throw DomainError("ladder_probs: marginal arrays empty or mismatched");
  for (std::size_t n = 0; n < M; ++n) {
    const double ge = input.prob_ge[n];
    const double gt = input.prob_gt[n];
    if (!(ge >= 0.0 && ge <= 1.0) || !(gt >= 0.0 && gt <= 1.0))
      throw DomainError("ladder_probs: probability outside [0,1]");
    if (gt > ge + 1e-12)
      throw DomainError("ladder_probs: strict probability exceeds weak one");
  }
  LadderProbs out;
  out.p.assign(M + 1, 0.0);
  out.p_tilde.assign(M + 1, 0.0);
  out.p[0] = out.p_tilde[0] = 1.0;
  for (std::size_t n = 1; n <= M; ++n) {
    double acc = 0.0, acc_t = 0.0;
    for (std::size_t k = 1; k <= n; ++k) {
      acc += input.prob_ge[k - 1] * out.p[n - k];
      acc_t += input.prob_gt[k - 1] * out.p_tilde[n - k];
    }
    out.p[n] = acc / static_cast<double>(n);
    out.p_tilde[n] = acc_t / static_cast<double>(n);
  }
  return out;
}

ChainLaw chain_law(const WalkLawInput& input, std::size_t N) {
  if (N < 1) throw DomainError("chain_law: window must be at least 1");
  if (input.prob_ge.size() < N + 1)
    throw DomainError("chain_law: marginals must cover n <= N+1");
  const LadderProbs lp = ladder_probs(input);

  // Backward factor. Read from the argmin towards the window start the
  // increments flip sign, so the survival that matters is the weak descent
  // P(S_1 <= 0, ..., S_n <= 0), driven by the complements of the strict
  // marginals. Only for symmetric walks does it coincide with the weak
  // ascent that ladder_probs reports.
  std::vector<double> q(N + 2);
  q[0] = 1.0;
  for (std::size_t n = 1; n <= N + 1; ++n) {
    double acc = 0.0;
    for (std::size_t k = 1; k <= n; ++k) acc += (1.0 - input.prob_gt[k - 1]) * q[n - k];
    q[n] = acc / static_cast<double>(n);
  }

  ChainLaw law;
  law.N = N;
  law.p = std::move(q);
  law.p_tilde.assign(lp.p_tilde.begin(), lp.p_tilde.begin() + static_cast<std::ptrdiff_t>(N + 2));
  for (std::size_t n = 0; n <= N; ++n) {
    if (!(law.p_tilde[n] > 0.0))
      throw DomainError("chain_law: strict descent probability vanishes");
  }

  law.pi.resize(N + 1);
  for (std::size_t k = 0; k <= N; ++k) law.pi[k] = law.p[k] * law.p_tilde[N - k];

  law.P.assign(N + 1, std::vector<double>(N + 1, 0.0));
  for (std::size_t i = 1; i <= N; ++i) {
    const double down = law.p_tilde[N + 1 - i] / law.p_tilde[N - i];
    law.P[i][i - 1] = down;
    law.P[i][N] += 1.0 - down;
  }
  double mass = 0.0;
  for (std::size_t j = 0; j < N; ++j) {
    const double v = (law.p[j] - law.p[j + 1]) * law.p_tilde[N - j] / law.p_tilde[N];
    law.P[0][j] = v;
    mass += v;
  }
  law.P[0][N] += 1.0 - mass;

  validate_chain_law(law);
  clamp_rows(law);
  return law;
}

ChainLaw chain_law_theta(double theta, std::size_t N) {
  if (!(theta > 0.0 && theta < 1.0)) throw DomainError("chain_law_theta: theta in (0,1)");
  if (N < 1) throw DomainError("chain_law_theta: window must be at least 1");

  // Forward strict ascent p_n = (theta)_n / n! and backward weak descent
  // q_n = (1-theta)_n / n!, built as running products; they cross only at
  // theta = 1/2, where the family is symmetric.
  std::vector<double> p(N + 2), q(N + 2);
  p[0] = q[0] = 1.0;
  for (std::size_t n = 1; n <= N + 1; ++n) {
    p[n] = p[n - 1] * (theta + static_cast<double>(n - 1)) / static_cast<double>(n);
    q[n] = q[n - 1] * (1.0 - theta + static_cast<double>(n - 1)) / static_cast<double>(n);
  }

  ChainLaw law;
  law.N = N;
  law.p = q;
  law.p_tilde = p;
  law.pi.resize(N + 1);
  for (std::size_t k = 0; k <= N; ++k) law.pi[k] = q[k] * p[N - k];

  law.P.assign(N + 1, std::vector<double>(N + 1, 0.0));
  for (std::size_t i = 1; i <= N; ++i) {
    const double den = static_cast<double>(N + 1 - i);
    law.P[i][i - 1] = (static_cast<double>(N - i) + theta) / den;
    law.P[i][N] += (1.0 - theta) / den;
  }
  // q_j - q_{j+1} collapses to theta q_j / (j+1).
  for (std::size_t j = 0; j < N; ++j)
    law.P[0][j] = theta / static_cast<double>(j + 1) * q[j] * p[N - j] / p[N];
  // Corner in closed form, from summing the row through the generating
  // function (1 - (1-s)^theta)/s of the descent entry weights; the row
  // summing to one is then a checked identity.
  law.P[0][N] = (1.0 - theta + theta * q[N] / p[N]) / static_cast<double>(N + 1);

  validate_chain_law(law);
  clamp_rows(law);
  return law;
}

namespace {

// P(S_n >= 0) and P(S_n > 0) for the simple symmetric walk: both 1/2 at odd
// n; at n = 2m the central-binomial mass of the tie splits them.
template <typename Prob, typename Central>
void ssrw_marginals(std::size_t M, Prob half, Prob one, Central central,
                    std::vector<Prob>& ge, std::vector<Prob>& gt) {
  ge.resize(M);
  gt.resize(M);
  for (std::size_t n = 1; n <= M; ++n) {
    if (n % 2 == 1) {
      ge[n - 1] = half;
      gt[n - 1] = half;
    } else {
      const Prob c = central(n / 2);
      ge[n - 1] = half * (one + c);
      gt[n - 1] = half * (one - c);
    }
  }
}

}  // namespace

ChainLaw chain_law_ssrw(std::size_t N) {
  WalkLawInput input;
  ssrw_marginals<double>(N + 1, 0.5, 1.0, central_prob, input.prob_ge, input.prob_gt);
  return chain_law(input, N);
}

RationalChainLaw chain_law_ssrw_exact(std::size_t N) {
  if (N < 1) throw DomainError("chain_law_ssrw_exact: window must be at least 1");
  if (N > 20) throw TooLarge("chain_law_ssrw_exact: rational range capped at N = 20");

  std::vector<Rational> ge, gt;
  ssrw_marginals<Rational>(N + 1, Rational(1, 2), Rational(1), central_prob_exact, ge, gt);

  // Backward weak-descent and forward strict-ascent ladders; the descent
  // marginal P(S_n <= 0) is the exact complement of the strict one, and for
  // this symmetric walk it coincides with ge[n]. Kept in complement form to
  // mirror the general constructor.
  std::vector<Rational> p(N + 2), pt(N + 2);
  p[0] = pt[0] = Rational(1);
  for (std::size_t n = 1; n <= N + 1; ++n) {
    Rational acc(0), acc_t(0);
    for (std::size_t k = 1; k <= n; ++k) {
      acc += (Rational(1) - gt[k - 1]) * p[n - k];
      acc_t += gt[k - 1] * pt[n - k];
    }
    p[n] = acc / Rational(static_cast<long long>(n));
    pt[n] = acc_t / Rational(static_cast<long long>(n));
  }

  RationalChainLaw law;
  law.N = N;
  law.p = p;
  law.p_tilde = pt;
  law.pi.resize(N + 1);
  for (std::size_t k = 0; k <= N; ++k) law.pi[k] = p[k] * pt[N - k];

  law.P.assign(N + 1, std::vector<Rational>(N + 1, Rational(0)));
  for (std::size_t i = 1; i <= N; ++i) {
    const Rational down = pt[N + 1 - i] / pt[N - i];
    law.P[i][i - 1] = down;
    law.P[i][N] += Rational(1) - down;
  }
  Rational mass(0);
  for (std::size_t j = 0; j < N; ++j) {
    const Rational v = (p[j] - p[j + 1]) * pt[N - j] / pt[N];
    law.P[0][j] = v;
    mass += v;
  }
  law.P[0][N] += Rational(1) - mass;

  // In exact arithmetic the invariants hold with equality, total mass included.
  Rational total(0);
  for (const Rational& v : law.pi) total += v;
  if (total != Rational(1)) throw DomainError("chain_law_ssrw_exact: mass defect");
  for (std::size_t j = 0; j <= N; ++j) {
    Rational flow(0);
    for (std::size_t i = 0; i <= N; ++i) flow += law.pi[i] * law.P[i][j];
    if (flow != law.pi[j]) throw DomainError("chain_law_ssrw_exact: not stationary");
  }
  return law;
}

RationalChainLaw enumerate_ssrw_oracle(std::size_t N) {
  if (N < 1) throw DomainError("enumerate_ssrw_oracle: window must be at least 1");
  if (N > 14) throw TooLarge("enumeration oracle capped at N = 14");

  // Last index attaining the window minimum, window start included.
  const auto last_argmin = [](const int* s, std::size_t count) {
    std::size_t arg = 0;
    for (std::size_t i = 1; i < count; ++i)
      if (s[i] <= s[arg]) arg = i;
    return arg;
  };

  const std::uint64_t seqs = 1ULL << (N + 1);
  std::vector<std::uint64_t> marg(N + 1, 0);
  std::vector<std::vector<std::uint64_t>> joint(N + 1, std::vector<std::uint64_t>(N + 1, 0));
  std::vector<int> s(N + 2);
  for (std::uint64_t mask = 0; mask < seqs; ++mask) {
    s[0] = 0;
    for (std::size_t j = 0; j <= N; ++j) s[j + 1] = s[j] + ((mask >> j) & 1ULL ? 1 : -1);
    const std::size_t a0 = last_argmin(s.data(), N + 1);
    const std::size_t a1 = last_argmin(s.data() + 1, N + 1);
    ++marg[a0];
    ++joint[a0][a1];
  }

  RationalChainLaw law;
  law.N = N;
  law.pi.resize(N + 1);
  law.P.assign(N + 1, std::vector<Rational>(N + 1, Rational(0)));
  for (std::size_t i = 0; i <= N; ++i) {
    law.pi[i] = Rational(static_cast<long long>(marg[i]), static_cast<long long>(seqs));
    for (std::size_t j = 0; j <= N; ++j)
      law.P[i][j] =
          Rational(static_cast<long long>(joint[i][j]), static_cast<long long>(marg[i]));
  }

  // Ladder probabilities by direct count as well, so the oracle does not
  // lean on the recursion it is meant to check: the backward weak descent
  // and the forward strict ascent.
  law.p.resize(N + 2);
  law.p_tilde.resize(N + 2);
  law.p[0] = law.p_tilde[0] = Rational(1);
  for (std::size_t n = 1; n <= N + 1; ++n) {
    std::uint64_t weak = 0, strict = 0;
    const std::uint64_t sub = 1ULL << n;
    for (std::uint64_t mask = 0; mask < sub; ++mask) {
      int run = 0;
      bool all_le = true, all_gt = true;
      for (std::size_t j = 0; j < n; ++j) {
        run += (mask >> j) & 1ULL ? 1 : -1;
        if (run > 0) all_le = false;
        if (run <= 0) all_gt = false;
      }
      weak += all_le;
      strict += all_gt;
    }
    law.p[n] = Rational(static_cast<long long>(weak), static_cast<long long>(sub));
    law.p_tilde[n] = Rational(static_cast<long long>(strict), static_cast<long long>(sub));
  }
  return law;
}

SsrwClosedFormReport compare_ssrw_closed_forms(std::size_t N) {
  const RationalChainLaw base = chain_law_ssrw_exact(N);
  SsrwClosedFormReport rep;
  rep.N = N;

  for (std::size_t k = 0; k <= N; ++k) {
    const Rational shortcut =
        central_prob_exact((k + 1) / 2) * central_prob_exact((N - k) / 2) / Rational(2);
    const double diff = to_double(rat_abs(shortcut - base.pi[k]));
    if (k < N)
      rep.pi_max_diff_below_N = std::max(rep.pi_max_diff_below_N, diff);
    else {
      rep.pi_diff_at_N = diff;
      rep.pi_at_N_ratio = to_double(shortcut / base.pi[k]);
    }
  }

  for (std::size_t i = 1; i <= N; ++i) {
    const std::size_t m = N - i;
    const Rational jump = m % 2 == 1
                              ? Rational(static_cast<long long>(m), static_cast<long long>(m + 1))
                              : Rational(1);
    const Rational down = Rational(1) - jump;
    const double direct = std::max(to_double(rat_abs(jump - base.P[i][N])),
                                   to_double(rat_abs(down - base.P[i][i - 1])));
    const double swapped = std::max(to_double(rat_abs(jump - base.P[i][i - 1])),
                                    to_double(rat_abs(down - base.P[i][N])));
    if (i < N) {
      rep.interior_max_diff_direct = std::max(rep.interior_max_diff_direct, direct);
      rep.interior_max_diff_swapped = std::max(rep.interior_max_diff_swapped, swapped);
    } else {
      rep.last_row_diff = std::min(direct, swapped);
    }
  }

  const auto half = static_cast<long long>(N / 2);
  for (std::size_t j = 0; j < N; ++j) {
    Rational form(0);
    if (j % 2 == 0) {
      const auto jj = static_cast<long long>(j);
      form = Rational(binom(jj, jj / 2) * binom(2 * half - jj, half - jj / 2),
                      (jj + 2) * binom(2 * half, half));
    }
    rep.origin_row_max_diff =
        std::max(rep.origin_row_max_diff, to_double(rat_abs(form - base.P[0][j])));
  }

  const Rational corner = N % 2 == 1 ? Rational(1, static_cast<long long>(N + 1))
                                     : Rational(2, static_cast<long long>(N + 2));
  rep.corner_diff = to_double(rat_abs(corner - base.P[0][N]));
  return rep;
}

ChainLaw simulate_chain(const IncrementModel& model, std::size_t N, std::size_t steps,
                        SeedSpec seed) {
  if (model.kind == IncrementModel::Kind::stable)
    throw ModelMismatch("simulate_chain: stable increments have no unit-step walk");
  if (N < 1) throw DomainError("simulate_chain: window must be at least 1");
  if (steps < 1000) throw DomainError("simulate_chain: need at least 1e3 steps");
  if (steps <= N) throw DomainError("simulate_chain: window exceeds the walk");
  if (model.kind == IncrementModel::Kind::generic_continuous && !model.sampler)
    throw DomainError("simulate_chain: generic model without sampler");

  Rng rng(seed);
  const auto draw = [&]() -> double {
    switch (model.kind) {
      case IncrementModel::Kind::gaussian:
        return rng.normal();
      case IncrementModel::Kind::rademacher:
        return static_cast<double>(rng.sign());
      default:
        return model.sampler(rng);
    }
  };

  // Streaming last-argmin over a window of N+1 values: one pass, no stored
  // path, candidates kept in a deque whose values increase front to back.
  std::vector<std::uint64_t> pi_count(N + 1, 0);
  std::vector<std::vector<std::uint64_t>> trans(N + 1, std::vector<std::uint64_t>(N + 1, 0));
  std::deque<std::pair<std::uint64_t, double>> cands;
  double s = 0.0;
  std::size_t prev = 0;
  for (std::uint64_t j = 0; j <= steps; ++j) {
    if (j > 0) s += draw();
    while (!cands.empty() && cands.back().second >= s) cands.pop_back();
    cands.emplace_back(j, s);
    if (j < N) continue;
    const std::uint64_t begin = j - N;
    while (cands.front().first < begin) cands.pop_front();
    const auto state = static_cast<std::size_t>(cands.front().first - begin);
    ++pi_count[state];
    if (begin > 0) ++trans[prev][state];
    prev = state;
  }

  ChainLaw law;
  law.N = N;
  law.pi.resize(N + 1);
  const auto windows = static_cast<double>(steps - N + 1);
  for (std::size_t k = 0; k <= N; ++k)
    law.pi[k] = static_cast<double>(pi_count[k]) / windows;
  law.P.assign(N + 1, std::vector<double>(N + 1, 0.0));
  for (std::size_t i = 0; i <= N; ++i) {
    std::uint64_t row = 0;
    for (std::size_t j = 0; j <= N; ++j) row += trans[i][j];
    if (row == 0) continue;  // state never left: row stays zero rather than fabricated
    for (std::size_t j = 0; j <= N; ++j)
      law.P[i][j] = static_cast<double>(trans[i][j]) / static_cast<double>(row);
  }
  return law;
}

}  // namespace argmin
