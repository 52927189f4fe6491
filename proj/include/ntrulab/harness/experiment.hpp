#pragma once

// Experiment runner: many independent (keypair, message, nonce) instances attacked
// through one shared reduced basis, with every random draw derived from the
// master seed so that reruns are identical.

#include <atomic>
#include <chrono>
#include <exception>
#include <filesystem>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

#include "ntrulab/attack.hpp"
#include "ntrulab/harness/cache.hpp"
#include "ntrulab/harness/presets.hpp"
#include "ntrulab/ntru.hpp"

namespace ntrulab::harness {

struct ExperimentSpec {
  ntru::NtruParams params;
  attack::AttackConfig attack;
  int trials = 1;
  std::uint64_t seed = 0;
  attack::CvpMode cvp = attack::CvpMode::automatic;
  lattice::ReductionParams reduction{};
  std::optional<int> example;  // preset this spec came from, if any

  void validate() const {
    params.validate();
    attack.validate();
    if (trials < 1) throw ParameterError("trials must be >= 1");
    if (attack.a_strategy == attack::AStrategy::structured && params.n % 2 == 0)
      throw ParameterError("structured a needs odd N");
    if (!attack.rn_guess.coeffs().empty() && attack.rn_guess.n() != params.n)
      throw ParameterError("rn_guess degree differs from N");
    reduction.validate();
  }
};

struct RunOptions {
  unsigned workers = 1;
  std::optional<std::filesystem::path> cache_dir;
};

struct TrialResult {
  std::size_t index = 0;
  std::uint64_t instance_seed = 0;
  int oracle_calls_used = 0;
  bool success = false;
  bool verified_nonce = false;
  bool indeterminate = false;
  bool message_matches = false;  // recovered message equals the one encrypted
  double wall_time = 0;
};

struct ExperimentReport {
  ExperimentSpec spec;
  ring::ConvPoly a;
  bool exact_cvp = false;
  std::vector<TrialResult> trials;
  int successes = 0;
  double success_rate = 0;
  bool basis_cache_hit = false;
  double lll_seconds = 0;
  double wall_seconds = 0;
};

inline std::uint64_t instance_seed(std::uint64_t master, std::size_t trial) {
  return derive_seed(derive_seed(master, seed_stream::trial), trial);
}

inline ring::ConvPoly experiment_a(const ExperimentSpec& spec) {
  Rng rng(derive_seed(spec.seed, seed_stream::a_vector));
  return attack::choose_a(spec.attack.a_strategy, spec.params.n, spec.params.q, spec.attack.y, rng);
}

inline BasisKey basis_key(const ExperimentSpec& spec) {
  return {spec.params.n, spec.params.q, spec.attack.y, spec.attack.a_strategy, spec.seed, spec.reduction.delta};
}

// The reduced basis and attack context an experiment (or sweep) shares.
struct SharedContext {
  ring::ConvPoly a;
  ReducedBasis reduced;
  std::optional<attack::AttackContext> ctx;
};

inline SharedContext prepare_context(const ExperimentSpec& spec, const RunOptions& opts) {
  SharedContext s;
  s.a = experiment_a(spec);
  s.reduced = obtain_reduced_basis(s.a, basis_key(spec), spec.reduction, opts.cache_dir);
  s.ctx.emplace(s.a, Integer(spec.params.q), s.reduced.basis, spec.cvp, spec.reduction);
  return s;
}

inline TrialResult run_trial(const ExperimentSpec& spec, const attack::AttackContext& ctx, std::size_t index) {
  const auto t0 = std::chrono::steady_clock::now();
  TrialResult tr;
  tr.index = index;
  tr.instance_seed = instance_seed(spec.seed, index);
  const ntru::NtruParams& params = spec.params;
  Rng key_rng(derive_seed(tr.instance_seed, seed_stream::keygen));
  Rng msg_rng(derive_seed(tr.instance_seed, seed_stream::message));
  Rng nonce_rng(derive_seed(tr.instance_seed, seed_stream::nonce));
  const ntru::KeyPair kp = ntru::keygen(params, key_rng);
  const ring::ConvPoly m = ntru::sample_message(params, msg_rng);
  const ring::ConvPoly r = ntru::sample_nonce(params, nonce_rng);
  const ntru::Ciphertext e = ntru::encrypt(kp.h, m, r, params);
  const ring::ConvPoly c = attack::compute_c_ground_truth(ctx.a(), r, kp.h, params.p, params.q);
  const attack::OracleLoopResult loop = attack::run_oracle_loop(e, kp.h, params, ctx, spec.attack, c,
                                                                derive_seed(tr.instance_seed, seed_stream::oracle));
  tr.oracle_calls_used = loop.oracle_calls_used;
  tr.success = loop.success;
  tr.verified_nonce = loop.verified_nonce;
  tr.indeterminate = loop.indeterminate;
  tr.message_matches = loop.success && loop.message == m;
  tr.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return tr;
}

// Runs fn(i) for i in [0, count) on up to `workers` threads; results land by index.
template <class Fn>
void parallel_for(std::size_t count, unsigned workers, Fn&& fn) {
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(count)));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < count;) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

inline ExperimentReport run_with_context(const ExperimentSpec& spec, const SharedContext& shared,
                                         const RunOptions& opts) {
  const auto t0 = std::chrono::steady_clock::now();
  ExperimentReport rep;
  rep.spec = spec;
  rep.a = shared.a;
  rep.exact_cvp = shared.ctx->uses_exact_cvp();
  rep.basis_cache_hit = shared.reduced.cache_hit;
  rep.lll_seconds = shared.reduced.lll_seconds;
  rep.trials.resize(static_cast<std::size_t>(spec.trials));
  parallel_for(rep.trials.size(), opts.workers, [&](std::size_t i) { rep.trials[i] = run_trial(spec, *shared.ctx, i); });
  for (const auto& t : rep.trials) rep.successes += t.success ? 1 : 0;
  rep.success_rate = static_cast<double>(rep.successes) / static_cast<double>(spec.trials);
  rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

inline ExperimentReport run_experiment(const ExperimentSpec& spec, const RunOptions& opts = {}) {
  spec.validate();
  const SharedContext shared = prepare_context(spec, opts);
  ExperimentReport rep = run_with_context(spec, shared, opts);
  rep.wall_seconds += shared.reduced.lll_seconds;
  return rep;
}

// One experiment per R over the same basis and the same instance seeds.
inline std::vector<ExperimentReport> run_sweep(ExperimentSpec spec, const std::vector<std::int64_t>& radii,
                                               const RunOptions& opts = {}) {
  spec.validate();
  if (radii.empty()) throw ParameterError("sweep needs at least one R");
  for (auto R : radii)
    if (R < 0) throw ParameterError("R must be >= 0");
  const SharedContext shared = prepare_context(spec, opts);
  std::vector<ExperimentReport> out;
  for (auto R : radii) {
    spec.attack.R = R;
    out.push_back(run_with_context(spec, shared, opts));
  }
  return out;
}

// Smallest R* in the sweep with rate >= 0.5 at every R <= R* and rate < 0.5 at
// R* + 2, when both appear in the sweep.
inline std::optional<std::int64_t> threshold_radius(const std::vector<ExperimentReport>& sweep) {
  auto rate_at = [&](std::int64_t R) -> std::optional<double> {
    for (const auto& r : sweep)
      if (r.spec.attack.R == R) return r.success_rate;
    return std::nullopt;
  };
  for (const auto& r : sweep) {
    const std::int64_t R = r.spec.attack.R;
    bool below_ok = true;
    for (const auto& s : sweep)
      if (s.spec.attack.R <= R && s.success_rate < 0.5) below_ok = false;
    const auto after = rate_at(R + 2);
    if (below_ok && after && *after < 0.5) return R;
  }
  return std::nullopt;
}

// A single instance of the reduction with an exact CVP oracle, together with the
// two conditions under which it is guaranteed to return V: ||V - E|| < q^(1/y) / 2
// and lambda_1(L_a) > q^(1/y), both decided exactly.
struct CertifiedTrial {
  bool distance_ok = false;
  bool lambda_ok = false;
  bool recovered = false;
  bool certified() const { return distance_ok && lambda_ok; }
};

inline CertifiedTrial run_certified_trial(const ntru::NtruParams& params, double y, std::int64_t R,
                                          attack::AStrategy strategy, std::uint64_t seed) {
  CertifiedTrial out;
  const Integer q = params.q;
  Rng a_rng(derive_seed(seed, seed_stream::a_vector));
  const ring::ConvPoly a = attack::choose_a(strategy, params.n, q, y, a_rng);
  Rng key_rng(derive_seed(seed, seed_stream::keygen));
  Rng msg_rng(derive_seed(seed, seed_stream::message));
  Rng nonce_rng(derive_seed(seed, seed_stream::nonce));
  Rng oracle_rng(derive_seed(seed, seed_stream::oracle));
  const ntru::KeyPair kp = ntru::keygen(params, key_rng);
  const ring::ConvPoly m = ntru::sample_message(params, msg_rng);
  const ring::ConvPoly r = ntru::sample_nonce(params, nonce_rng);
  const ntru::Ciphertext e = ntru::encrypt(kp.h, m, r, params);
  const ring::ConvPoly c = attack::compute_c_ground_truth(a, r, kp.h, params.p, q);
  const attack::EVector E = attack::oracle_E(c, R, ring::ConvPoly(), oracle_rng);
  const IntVector V = attack::SolutionVector::of(m, c).values;

  const Float200 root = root_power(q, y);
  Integer dist = 0;
  for (std::size_t i = 0; i < V.size(); ++i) dist += (V[i] - E.values[i]) * (V[i] - E.values[i]);
  out.distance_ok = 4 * to_float<Float200>(dist) < root * root;
  const lattice::LatticeBasis Ma = attack::build_M_a(a, q);
  const lattice::ShortestVector sv = lattice::svp_exact(Ma);
  out.lambda_ok = to_float<Float200>(sv.norm_squared) > root * root;

  const attack::AttackContext ctx(a, q, lattice::lll_reduce(Ma), attack::CvpMode::exact);
  out.recovered = attack::run_attack(e, ctx, E) == m;
  return out;
}

}  // namespace ntrulab::harness
