#pragma once

// Command-line front end. Exit codes: 0 success, 2 usage, 3 invalid parameters,
// 4 corrupt basis cache, 1 anything else.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ntrulab/analysis.hpp"
#include "ntrulab/harness.hpp"
#include "ntrulab/io.hpp"

namespace ntrulab::cli {

using harness::Json;
using ring::ConvPoly;

enum ExitCode { kOk = 0, kFailure = 1, kUsage = 2, kInvalid = 3, kCacheCorrupt = 4 };

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::uint64_t seed = 1;
  bool json = false;
  std::string cache_dir = ".ntrulab-cache";
  bool no_cache = false;
  unsigned workers = 1;

  std::optional<std::filesystem::path> cache() const {
    if (no_cache) return std::nullopt;
    return std::filesystem::path(cache_dir);
  }
};

struct ParamFlags {
  std::size_t n = 0;
  std::int64_t p = 3;
  std::int64_t q = 0;
  std::size_t d = 0;
  std::string form = "ternary";

  void add_to(CLI::App* app, bool with_form = false) {
    app->add_option("--N", n, "ring degree (prime)")->required();
    app->add_option("--p", p, "small modulus")->capture_default_str();
    app->add_option("--q", q, "large modulus (power of 2)")->required();
    app->add_option("--d", d, "weight parameter of the ternary spaces")->required();
    if (with_form) app->add_option("--form", form, "private key form: ternary or one_plus_p")->capture_default_str();
  }

  ntru::NtruParams params() const {
    ntru::PrivateKeyForm f;
    if (form == "ternary") f = ntru::PrivateKeyForm::ternary;
    else if (form == "one_plus_p") f = ntru::PrivateKeyForm::one_plus_p;
    else throw ParameterError("unknown key form '" + form + "'");
    auto params = ntru::NtruParams::standard(n, p, q, d, f);
    params.validate();
    return params;
  }
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream os(path);
  if (!os) throw UsageError("cannot write '" + path + "'");
  os << text;
}

inline ConvPoly read_poly_file(const std::string& path, const char* what, std::size_t n) {
  std::istringstream in(read_file(path));
  ConvPoly p = io::read_single_poly(in, what);
  if (p.n() != n) throw DimensionMismatch(std::string(what) + " has degree " + std::to_string(p.n()));
  return p;
}

inline std::string poly_line(const ConvPoly& p, const Integer& modulus) {
  std::ostringstream os;
  io::write_poly_line(os, p, modulus);
  return os.str();
}

// "0:12" (inclusive range) or "0,3,7".
inline std::vector<std::int64_t> parse_radii(const std::string& text) {
  std::vector<std::int64_t> out;
  try {
    if (auto colon = text.find(':'); colon != std::string::npos) {
      const std::int64_t lo = std::stoll(text.substr(0, colon)), hi = std::stoll(text.substr(colon + 1));
      if (lo > hi) throw ParameterError("empty R range '" + text + "'");
      for (std::int64_t r = lo; r <= hi; ++r) out.push_back(r);
    } else {
      std::istringstream is(text);
      for (std::string tok; std::getline(is, tok, ',');) out.push_back(std::stoll(tok));
    }
  } catch (const std::invalid_argument&) {
    throw UsageError("cannot parse R list '" + text + "'");
  } catch (const std::out_of_range&) {
    throw UsageError("cannot parse R list '" + text + "'");
  }
  if (out.empty()) throw UsageError("empty R list");
  return out;
}

inline int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"ntrulab: NTRU message recovery through a key-independent lattice"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "master seed")->capture_default_str();
  app.add_flag("--json", g.json, "machine-readable output");
  app.add_option("--cache-dir", g.cache_dir, "directory of reduced-basis cache files")->capture_default_str();
  app.add_flag("--no-cache", g.no_cache, "do not read or write the basis cache");
  app.add_option("--workers", g.workers, "worker threads for experiments")->capture_default_str()->check(CLI::Range(1u, 1024u));

  // keygen
  auto* keygen = app.add_subcommand("keygen", "generate a key pair");
  ParamFlags kg;
  kg.add_to(keygen, true);
  std::string private_out, public_out;
  keygen->add_option("--private-out", private_out, "write f, g, fp, fq, h here");
  keygen->add_option("--public-out", public_out, "write h here");

  // encrypt
  auto* encrypt = app.add_subcommand("encrypt", "encrypt a message (random when none is given)");
  ParamFlags en;
  en.add_to(encrypt);
  std::string enc_public, enc_message, enc_out, enc_nonce_out;
  encrypt->add_option("--public", enc_public, "public key file")->required();
  encrypt->add_option("--message", enc_message, "message file");
  encrypt->add_option("--out", enc_out, "ciphertext file (default: standard output)");
  encrypt->add_option("--nonce-out", enc_nonce_out, "also write the nonce used (for simulated attacks)");

  // decrypt
  auto* decrypt = app.add_subcommand("decrypt", "decrypt a ciphertext");
  ParamFlags de;
  de.add_to(decrypt);
  std::string dec_private, dec_cipher;
  decrypt->add_option("--private", dec_private, "private key file")->required();
  decrypt->add_option("--ciphertext", dec_cipher, "ciphertext file")->required();

  // attack
  auto* attack_cmd = app.add_subcommand("attack", "recover one message with the simulated oracle");
  ParamFlags at;
  at.add_to(attack_cmd);
  double at_y = 2.3;
  std::int64_t at_R = 0;
  int at_calls = 100;
  std::string at_strategy = "algorithm1", at_cvp = "auto", at_public, at_cipher, at_nonce;
  attack_cmd->add_option("--y", at_y)->capture_default_str();
  attack_cmd->add_option("--R", at_R, "oracle radius")->capture_default_str();
  attack_cmd->add_option("--strategy", at_strategy, "a-vector strategy")->capture_default_str();
  attack_cmd->add_option("--max-calls", at_calls)->capture_default_str();
  attack_cmd->add_option("--cvp", at_cvp, "auto, babai or exact")->capture_default_str();
  attack_cmd->add_option("--public", at_public, "public key file (omit to generate an instance from --seed)");
  attack_cmd->add_option("--ciphertext", at_cipher, "ciphertext file");
  attack_cmd->add_option("--nonce", at_nonce, "the nonce behind the ciphertext; only the oracle sees it");

  // experiment
  auto* experiment = app.add_subcommand("experiment", "run seeded attack trials and print a JSON report");
  int ex_example = 0;
  std::size_t ex_scale = 0, ex_n = 0, ex_d = 0;
  std::int64_t ex_p = 3, ex_q = 0, ex_R = -1;
  double ex_y = 0;
  bool ex_full = false, ex_timing = false;
  int ex_trials = 20, ex_calls = 100;
  unsigned ex_bits = 200;
  std::string ex_strategy, ex_cvp = "auto", ex_sweep, ex_out, ex_lll = "float";
  experiment->add_option("--example", ex_example, "published parameter set 1..7")->check(CLI::Range(1, 7));
  experiment->add_option("--scale", ex_scale, "run the example at this ring degree (default 61)");
  experiment->add_flag("--full", ex_full, "run the example at its published ring degree");
  experiment->add_option("--N", ex_n);
  experiment->add_option("--d", ex_d);
  experiment->add_option("--p", ex_p);
  experiment->add_option("--q", ex_q);
  experiment->add_option("--y", ex_y);
  experiment->add_option("--R", ex_R, "oracle radius");
  experiment->add_option("--strategy", ex_strategy, "a-vector strategy");
  experiment->add_option("--trials", ex_trials)->capture_default_str();
  experiment->add_option("--max-calls", ex_calls)->capture_default_str();
  experiment->add_option("--cvp", ex_cvp, "auto, babai or exact")->capture_default_str();
  experiment->add_option("--sweep-R", ex_sweep, "R values, 'lo:hi' or 'r1,r2,...'");
  experiment->add_option("--lll", ex_lll, "float or exact")->capture_default_str();
  experiment->add_option("--mantissa-bits", ex_bits)->capture_default_str();
  experiment->add_flag("--timing", ex_timing, "add cache-hit and timing fields (not reproducible)");
  experiment->add_option("--out", ex_out, "report file (default: standard output)");

  // check-params
  auto* check = app.add_subcommand("check-params", "evaluate the inequalities behind the attack");
  std::size_t cp_n = 0;
  std::int64_t cp_q = 0, cp_R = 0;
  double cp_y = 0;
  std::size_t cp_cap = lattice::kDefaultEnumerationCap;
  std::string cp_a = "uniform";
  check->add_option("--N", cp_n)->required();
  check->add_option("--q", cp_q)->required();
  check->add_option("--y", cp_y)->required();
  check->add_option("--R", cp_R)->capture_default_str();
  check->add_option("--a", cp_a, "uniform, algorithm1, pm2_shuffled, structured or none")->capture_default_str();
  check->add_option("--enum-cap", cp_cap, "largest rank for exact SVP")->capture_default_str();

  // reduce-basis
  auto* reduce = app.add_subcommand("reduce-basis", "LLL-reduce M_a and store it in the cache");
  std::size_t rb_n = 0;
  std::int64_t rb_q = 0;
  double rb_y = 2.3, rb_delta = 0.99;
  bool rb_timing = false;
  std::string rb_strategy = "algorithm1";
  reduce->add_option("--N", rb_n)->required();
  reduce->add_option("--q", rb_q)->required();
  reduce->add_option("--y", rb_y)->capture_default_str();
  reduce->add_option("--strategy", rb_strategy)->capture_default_str();
  reduce->add_option("--delta", rb_delta)->capture_default_str();
  reduce->add_flag("--timing", rb_timing, "add the reduction time");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*keygen) {
      const auto params = kg.params();
      Rng rng(derive_seed(g.seed, seed_stream::keygen));
      const ntru::KeyPair kp = ntru::keygen(params, rng);
      std::ostringstream priv, pub;
      io::write_private_key(priv, kp, params);
      io::write_public_key(pub, kp, params);
      if (!private_out.empty()) write_file(private_out, priv.str());
      if (!public_out.empty()) write_file(public_out, pub.str());
      if (g.json) {
        out << Json{{"f", harness::poly_json(kp.f)}, {"g", harness::poly_json(kp.g)}, {"fp", harness::poly_json(kp.fp)},
                    {"fq", harness::poly_json(kp.fq)}, {"h", harness::poly_json(kp.h)}}
                   .dump(2)
            << '\n';
      } else if (private_out.empty()) {
        out << priv.str();
      }
      return kOk;
    }

    if (*encrypt) {
      const auto params = en.params();
      const ConvPoly h = read_poly_file(enc_public, "public key", params.n);
      Rng msg_rng(derive_seed(g.seed, seed_stream::message));
      Rng nonce_rng(derive_seed(g.seed, seed_stream::nonce));
      const ConvPoly m = enc_message.empty() ? ntru::sample_message(params, msg_rng)
                                             : read_poly_file(enc_message, "message", params.n);
      const ConvPoly r = ntru::sample_nonce(params, nonce_rng);
      const ntru::Ciphertext c = ntru::encrypt(h, m, r, params);
      if (!enc_nonce_out.empty()) write_file(enc_nonce_out, poly_line(r, params.q));
      const std::string line = poly_line(c.e, params.q);
      if (!enc_out.empty()) write_file(enc_out, line);
      if (g.json) out << Json{{"e", harness::poly_json(c.e)}, {"m", harness::poly_json(m)}}.dump(2) << '\n';
      else if (enc_out.empty()) out << line;
      return kOk;
    }

    if (*decrypt) {
      const auto params = de.params();
      std::istringstream in(read_file(dec_private));
      const ntru::KeyPair kp = io::read_private_key(in);
      const ConvPoly e = read_poly_file(dec_cipher, "ciphertext", params.n);
      const ConvPoly m = ntru::decrypt({e}, kp, params);
      if (g.json) out << Json{{"m", harness::poly_json(m)}}.dump(2) << '\n';
      else out << poly_line(m, params.p);
      return kOk;
    }

    if (*attack_cmd) {
      const auto params = at.params();
      attack::AttackConfig cfg;
      cfg.y = at_y;
      cfg.R = at_R;
      cfg.a_strategy = attack::parse_strategy(at_strategy);
      cfg.max_oracle_calls = at_calls;
      harness::ExperimentSpec spec{params, cfg, 1, g.seed, harness::parse_cvp_mode(at_cvp)};
      spec.validate();
      const harness::SharedContext shared = harness::prepare_context(spec, {g.workers, g.cache()});
      ConvPoly h, r, m_true;
      ntru::Ciphertext e;
      bool known_message = false;
      if (at_public.empty()) {
        if (!at_cipher.empty() || !at_nonce.empty()) throw UsageError("--ciphertext/--nonce need --public");
        const std::uint64_t inst = harness::instance_seed(g.seed, 0);
        Rng key_rng(derive_seed(inst, seed_stream::keygen));
        Rng msg_rng(derive_seed(inst, seed_stream::message));
        Rng nonce_rng(derive_seed(inst, seed_stream::nonce));
        const ntru::KeyPair kp = ntru::keygen(params, key_rng);
        m_true = ntru::sample_message(params, msg_rng);
        r = ntru::sample_nonce(params, nonce_rng);
        h = kp.h;
        e = ntru::encrypt(h, m_true, r, params);
        known_message = true;
      } else {
        if (at_cipher.empty() || at_nonce.empty()) throw UsageError("--public needs --ciphertext and --nonce");
        h = read_poly_file(at_public, "public key", params.n);
        e = {read_poly_file(at_cipher, "ciphertext", params.n)};
        r = read_poly_file(at_nonce, "nonce", params.n);
      }
      const ConvPoly c = attack::compute_c_ground_truth(shared.a, r, h, params.p, params.q);
      const auto loop = attack::run_oracle_loop(e, h, params, *shared.ctx, cfg, c,
                                                derive_seed(harness::instance_seed(g.seed, 0), seed_stream::oracle));
      if (g.json) {
        Json j;
        j["success"] = loop.success;
        j["oracle_calls_used"] = loop.oracle_calls_used;
        j["verified_nonce"] = loop.verified_nonce;
        j["indeterminate"] = loop.indeterminate;
        j["message"] = loop.success ? harness::poly_json(loop.message) : Json(nullptr);
        if (known_message) j["message_matches"] = loop.success && loop.message == m_true;
        out << j.dump(2) << '\n';
      } else {
        out << (loop.success ? "recovered" : "not recovered") << " after " << loop.oracle_calls_used
            << " oracle calls\n";
        if (loop.success) out << poly_line(loop.message, params.p);
      }
      return loop.success ? kOk : kFailure;
    }

    if (*experiment) {
      harness::ExperimentSpec spec;
      spec.seed = g.seed;
      std::optional<harness::Preset> base;
      if (ex_example) {
        if (ex_full && ex_scale) throw UsageError("--full and --scale are exclusive");
        if (ex_n) throw UsageError("--N conflicts with --example; use --scale");
        const harness::Preset& p = harness::preset(ex_example);
        base = ex_full ? p : harness::scaled(p, ex_scale ? ex_scale : harness::kDefaultDeskScale);
        spec.example = ex_example;
      } else {
        if (ex_full || ex_scale) throw UsageError("--full and --scale need --example");
        if (!ex_n || !ex_q || !ex_d) throw UsageError("experiment needs --example or all of --N, --q, --d");
        base = harness::Preset{0, ex_n, ex_d, ex_p, ex_q, 2.3, 0, attack::AStrategy::algorithm1};
      }
      if (ex_y > 0) base->y = ex_y;
      if (ex_R >= 0) base->R = ex_R;
      if (ex_example && ex_p != 3) base->p = ex_p;
      if (ex_example && ex_q) base->q = ex_q;
      if (ex_example && ex_d) base->d = ex_d;
      if (!ex_strategy.empty()) base->strategy = attack::parse_strategy(ex_strategy);
      spec.params = harness::params_of(*base);
      spec.attack.y = base->y;
      spec.attack.R = base->R;
      spec.attack.a_strategy = base->strategy;
      spec.attack.max_oracle_calls = ex_calls;
      spec.trials = ex_trials;
      spec.cvp = harness::parse_cvp_mode(ex_cvp);
      if (ex_lll == "exact") spec.reduction.mode = lattice::PrecisionMode::exact_rational;
      else if (ex_lll != "float") throw ParameterError("--lll must be float or exact");
      spec.reduction.mantissa_bits = ex_bits;
      const harness::RunOptions ro{g.workers, g.cache()};
      const harness::ReportOptions rep_opts{ex_timing};
      Json j;
      if (!ex_sweep.empty()) {
        if (ex_R >= 0) throw UsageError("--R and --sweep-R are exclusive");
        j = harness::sweep_json(harness::run_sweep(spec, parse_radii(ex_sweep), ro), rep_opts);
      } else {
        j = harness::experiment_json(harness::run_experiment(spec, ro), rep_opts);
      }
      const std::string text = j.dump(2) + "\n";
      if (!ex_out.empty()) write_file(ex_out, text);
      else out << text;
      return kOk;
    }

    if (*check) {
      if (cp_q < 2) throw ParameterError("q must be >= 2");
      std::optional<ConvPoly> a;
      Rng rng(derive_seed(g.seed, seed_stream::a_vector));
      if (cp_a == "uniform") a = analysis::random_uniform_a(cp_n, Integer(cp_q), rng);
      else if (cp_a != "none") a = attack::choose_a(attack::parse_strategy(cp_a), cp_n, Integer(cp_q), cp_y, rng);
      analysis::ParamCheckOptions opts;
      opts.enumeration_cap = cp_cap;
      const auto rep = analysis::check_params(cp_n, Integer(cp_q), cp_y, cp_R, a.value_or(ConvPoly()), opts);
      const Json j = harness::param_check_json(rep, a, cp_a, g.seed);
      if (g.json) {
        out << j.dump(2) << '\n';
      } else {
        for (const auto& [k, v] : j.items())
          if (k != "a" && k != "schema") out << k << " = " << (v.is_string() ? v.get<std::string>() : v.dump()) << '\n';
      }
      return kOk;
    }

    if (*reduce) {
      harness::ExperimentSpec spec;
      spec.params.n = rb_n;
      spec.attack.y = rb_y;
      spec.attack.a_strategy = attack::parse_strategy(rb_strategy);
      spec.seed = g.seed;
      spec.reduction.delta = rb_delta;
      spec.reduction.validate();
      if (rb_n < 2 || rb_q < 2) throw ParameterError("reduce-basis needs N >= 2 and q >= 2");
      Rng rng(derive_seed(g.seed, seed_stream::a_vector));
      const ConvPoly a = attack::choose_a(spec.attack.a_strategy, rb_n, Integer(rb_q), rb_y, rng);
      const harness::BasisKey key{rb_n, Integer(rb_q), rb_y, spec.attack.a_strategy, g.seed, rb_delta};
      if (!g.cache()) throw UsageError("reduce-basis needs the cache (drop --no-cache)");
      const harness::ReducedBasis rb = harness::obtain_reduced_basis(a, key, spec.reduction, g.cache());
      Json j;
      j["basis_cache_hit"] = rb.cache_hit;
      j["path"] = rb.path ? rb.path->string() : "";
      j["N"] = rb_n;
      j["q"] = rb_q;
      j["y"] = rb_y;
      j["strategy"] = rb_strategy;
      j["seed"] = g.seed;
      j["b1_norm_squared"] = harness::integer_json(squared_norm(rb.basis.row_vector(0)));
      if (rb_timing) j["lll_seconds"] = rb.lll_seconds;
      if (g.json) out << j.dump(2) << '\n';
      else out << "basis_cache_hit=" << (rb.cache_hit ? "true" : "false") << " path=" << j["path"].get<std::string>() << '\n';
      return kOk;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const CacheCorrupt& e) {
    err << "error: corrupt basis cache: " << e.what() << '\n';
    return kCacheCorrupt;
  } catch (const ParameterError& e) {
    err << "error: invalid parameters: " << e.what() << '\n';
    return kInvalid;
  } catch (const DimensionMismatch& e) {
    err << "error: invalid parameters: " << e.what() << '\n';
    return kInvalid;
  } catch (const FormatError& e) {
    err << "error: malformed input: " << e.what() << '\n';
    return kInvalid;
  } catch (const RankTooLarge& e) {
    err << "error: " << e.what() << '\n';
    return kInvalid;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
  return kUsage;
}

}  // namespace ntrulab::cli
