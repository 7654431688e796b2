// carrylab CLI: digit windows, carries, and binomial divisibility scans.
//
// Exit codes: 0 success, 1 a verification failed or an expectation was not
// met, 2 usage or domain error, 3 I/O error. Payload output goes to stdout
// and is deterministic for fixed flags; timing and progress go to stderr.

#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <json.hpp>
#include <thread>

#include "carrylab/counting.hpp"
#include "carrylab/digitseq.hpp"
#include "carrylab/errors.hpp"
#include "carrylab/kernels.hpp"
#include "carrylab/numctx.hpp"
#include "carrylab/scanner.hpp"
#include "carrylab/statlab.hpp"

using json = nlohmann::ordered_json;
using namespace carrylab;

namespace {

int exit_code_for(Errc c) {
  switch (c) {
    case Errc::IoError:
    case Errc::CorruptCheckpoint:
      return 3;
    default:
      return 2;
  }
}

unsigned resolve_threads(unsigned cli_value) {
  if (cli_value) return cli_value;
  if (const char* e = std::getenv("CARRYLAB_THREADS")) {
    long v = std::strtol(e, nullptr, 10);
    if (v >= 1) return static_cast<unsigned>(v);
  }
  unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

int run_ctx(uint64_t p, uint64_t alpha, bool table, uint64_t delta_cap, uint64_t tau_bits_cap) {
  ContextOptions opts;
  if (delta_cap) opts.delta_cap = delta_cap;
  if (tau_bits_cap) opts.tau_bits_cap = tau_bits_cap;
  BasePContext ctx = make_context(p, alpha, opts);
  if (table) {
    std::cout << "p         " << ctx.p << "\n"
              << "alpha     " << ctx.alpha << "\n"
              << "gamma     " << ctx.gamma << "\n"
              << "theta     " << ctx.theta << "\n"
              << "tau       " << ctx.tau << "\n"
              << "mu        " << static_cast<double>(ctx.mu) << "\n"
              << "wieferich " << (ctx.wieferich ? "true" : "false") << "\n";
    std::cout << "delta     ";
    for (size_t i = 0; i < ctx.delta.size(); ++i) std::cout << (i ? " " : "") << ctx.delta[i];
    std::cout << "\n";
    return 0;
  }
  json j;
  j["p"] = ctx.p;
  j["alpha"] = ctx.alpha;
  j["gamma"] = ctx.gamma;
  j["delta"] = ctx.delta;
  j["theta"] = ctx.theta;
  j["tau"] = ctx.tau;
  j["mu"] = static_cast<double>(ctx.mu);
  j["wieferich"] = ctx.wieferich;
  std::cout << j.dump() << "\n";
  return 0;
}

int run_verify_ck(uint64_t p, uint64_t alpha, uint32_t k_max, uint64_t cap) {
  BasePContext ctx = make_context(p, alpha);
  bool all_pass = true;
  for (uint32_t k = 0; k <= k_max; ++k) {
    VerificationReport rep = verify_pattern_cover(ctx, k, cap);
    json j;
    j["check"] = "ck";
    j["p"] = p;
    j["alpha"] = alpha;
    j["k"] = k;
    j["patterns"] = rep.checked;
    j["pass"] = rep.pass;
    if (!rep.pass) {
      all_pass = false;
      j["detail"] = rep.detail;
      if (rep.collision) j["collision"] = {rep.collision->first, rep.collision->second};
    }
    std::cout << j.dump() << "\n";
  }
  return all_pass ? 0 : 1;
}

int run_verify_lemmas(uint64_t p, uint64_t alpha, uint32_t k_max) {
  BasePContext ctx = make_context(p, alpha);
  bool all_pass = true;
  for (uint32_t k = 0; k <= k_max; ++k) {
    uint64_t exp = ctx.gamma;
    for (uint32_t i = 0; i < k; ++i) {
      if (exp > ~uint64_t(0) / p) raise(Errc::CapExceeded, "gamma*p^k exceeds 64 bits");
      exp *= p;
    }
    const bool val_ok = pow_valuation_is(alpha, exp, p, ctx.tau + k);
    const uint64_t ord = order_mod_power(ctx, k);
    const bool ord_ok = ord == exp;
    json j;
    j["check"] = "lemmas";
    j["p"] = p;
    j["alpha"] = alpha;
    j["k"] = k;
    j["valuation_pass"] = val_ok;
    j["order"] = ord;
    j["order_pass"] = ord_ok;
    std::cout << j.dump() << "\n";
    all_pass = all_pass && val_ok && ord_ok;
  }
  return all_pass ? 0 : 1;
}

int run_verify_bounds(uint64_t p, uint64_t alpha, uint64_t a_max, std::vector<uint32_t> ns,
                      uint64_t cap) {
  BasePContext ctx = make_context(p, alpha);
  BoundSweep sweep = sweep_bounds(ctx, a_max, ns, cap);
  for (const auto& v : sweep.violations) std::cout << report_json_line(v) << "\n";
  json j;
  j["check"] = "bounds";
  j["p"] = p;
  j["alpha"] = alpha;
  j["a_max"] = a_max;
  j["checked"] = sweep.checked;
  j["violations"] = sweep.violations.size();
  j["pass"] = sweep.violations.empty();
  std::cout << j.dump() << "\n";
  return sweep.violations.empty() ? 0 : 1;
}

int run_scan(ScanConfig cfg, const std::string& resume_path) {
  cfg.threads = resolve_threads(cfg.threads);
  ScanSummary sum = resume_path.empty() ? scan(cfg) : scan_resume(cfg, resume_path);
  json j;
  j["checked"] = sum.checked;
  j["survivors"] = sum.survivors;
  j["out"] = sum.out_path;
  std::cout << j.dump() << "\n";
  std::cerr << "kernel " << sum.kernel << ", " << sum.seconds << " s, "
            << static_cast<uint64_t>(sum.steps_per_sec) << " steps/s\n";
  return 0;
}

int run_recheck(uint64_t p, uint64_t alpha, uint32_t n_required, const std::string& in_path,
                std::vector<uint32_t> schedule, ScanMode mode,
                const std::vector<uint64_t>& expect, bool expect_given,
                const std::string& json_path) {
  std::vector<uint64_t> ks = load_survivors(in_path);
  RecheckReport rep = recheck(p, alpha, n_required, ks, std::move(schedule), mode);
  std::string payload = recheck_json(rep);
  std::cout << payload << "\n";
  if (!json_path.empty()) {
    std::ofstream out(json_path, std::ios::binary | std::ios::trunc);
    if (!out) raise(Errc::IoError, "cannot open " + json_path);
    out << payload << "\n";
    out.flush();
    if (!out) raise(Errc::IoError, "write failed on " + json_path);
  }
  std::vector<uint64_t> exceptions = rep.exceptions();
  std::cerr << rep.items.size() << " rechecked, " << exceptions.size() << " exceptions, "
            << rep.undecided() << " undecided\n";
  if (rep.undecided() > 0) return 1;
  if (expect_given && exceptions != expect) return 1;
  return 0;
}

int run_champ(uint64_t m, uint64_t a, bool members, uint64_t cap, bool table) {
  ChampCount c = champ_count(m, a, members, cap);
  if (table) {
    std::cout << "m       " << c.m << "\n"
              << "limit   " << c.a << "\n"
              << "count   " << c.count << "\n";
    if (members) {
      std::cout << "members ";
      for (size_t i = 0; i < c.members.size(); ++i) std::cout << (i ? " " : "") << c.members[i];
      std::cout << "\n";
    }
    return 0;
  }
  json j;
  j["m"] = c.m;
  j["limit"] = c.a;
  j["count"] = c.count;
  if (members) j["members"] = c.members;
  json f = json::array();
  for (auto [q, e] : c.factors) f.push_back(json{{"prime", q}, {"exponent", e}});
  j["factors"] = f;
  std::cout << j.dump() << "\n";
  return 0;
}

int run_count(uint64_t p, uint64_t alpha, uint32_t n, uint64_t a, bool members, uint64_t cap) {
  BasePContext ctx = make_context(p, alpha);
  SCount sc = s_count(ctx, n, a, members, cap);
  json j;
  j["p"] = p;
  j["alpha"] = alpha;
  j["n"] = n;
  j["a"] = a;
  j["exact"] = sc.count;
  if (members) j["members"] = sc.members;
  std::cout << j.dump() << "\n";

  bool all_ok = true;
  auto emit = [&](CountReport r) {
    all_ok = all_ok && r.satisfied;
    std::cout << report_json_line(r) << "\n";
  };
  // grid decomposition a = s*gamma*p^t with maximal t
  if (a % ctx.gamma == 0) {
    uint64_t q = a / ctx.gamma;
    uint32_t t = 0;
    while (q % p == 0) {
      q /= p;
      ++t;
    }
    if (n == 1) emit(make_report("SsP1", ctx, 1, a, sc.count, bound_ssp1(ctx, q, t)));
    if (t >= 1) emit(make_report("SpnInter", ctx, n, a, sc.count, bound_spn_inter(ctx, q, t, n)));
  }
  if (n == 1 && p == 3 && alpha % 3 == 2)
    emit(make_report("S31", ctx, 1, a, sc.count, bound_s31(ctx, a)));
  if (n == 1) emit(make_report("SP1", ctx, 1, a, sc.count, bound_sp1(ctx, a)));
  if (ctx.gamma <= a / p) emit(make_report("SPN", ctx, n, a, sc.count, bound_spn(ctx, a, n)));
  return all_ok ? 0 : 1;
}

int run_stats(uint64_t p, uint64_t k_from, uint64_t k_to, uint64_t stride, uint64_t cap,
              const std::string& csv_path, bool table) {
  EpsSeries s = eps_series(p, k_from, k_to, stride, cap);
  if (csv_path == "-") {
    std::cout << eps_csv(s);
    return 0;
  }
  if (!csv_path.empty()) {
    std::ofstream out(csv_path, std::ios::binary | std::ios::trunc);
    if (!out) raise(Errc::IoError, "cannot open " + csv_path);
    out << eps_csv(s);
    out.flush();
    if (!out) raise(Errc::IoError, "write failed on " + csv_path);
  }
  if (table) {
    std::cout << "p               " << s.p << "\n"
              << "points          " << s.k_values.size() << "\n"
              << "predicted_slope " << static_cast<double>(s.predicted_slope) << "\n"
              << "fitted_slope    " << static_cast<double>(s.fitted_slope) << "\n"
              << "residual_scale  " << static_cast<double>(s.residual_scale) << "\n";
    return 0;
  }
  std::cout << eps_summary_json(s) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"carrylab: digit windows, carries, and central binomial divisibility"};
  app.require_subcommand(1);
  std::function<int()> action;

  // ctx
  {
    auto* cmd = app.add_subcommand("ctx", "derived constants of a (p, alpha) pair");
    auto p = std::make_shared<uint64_t>(0);
    auto alpha = std::make_shared<uint64_t>(0);
    auto table = std::make_shared<bool>(false);
    auto dcap = std::make_shared<uint64_t>(0);
    auto tcap = std::make_shared<uint64_t>(0);
    cmd->add_option("--p", *p, "odd prime base")->required();
    cmd->add_option("--alpha", *alpha, "multiplier, coprime to p")->required();
    cmd->add_flag("--table", *table, "human-readable output");
    cmd->add_option("--delta-cap", *dcap, "max order to materialize");
    cmd->add_option("--tau-bits-cap", *tcap, "max bit size of alpha^gamma");
    cmd->callback(
        [=, &action] { action = [=] { return run_ctx(*p, *alpha, *table, *dcap, *tcap); }; });
  }

  // verify
  {
    auto* ver = app.add_subcommand("verify", "exhaustive checks of the digit machinery");
    ver->require_subcommand(1);
    {
      auto* cmd = ver->add_subcommand("ck", "pattern cover over one full period");
      auto p = std::make_shared<uint64_t>(0);
      auto alpha = std::make_shared<uint64_t>(0);
      auto k_max = std::make_shared<uint32_t>(3);
      auto cap = std::make_shared<uint64_t>(kEnumerationCap);
      cmd->add_option("--p", *p, "odd prime base")->required();
      cmd->add_option("--alpha", *alpha, "multiplier")->required();
      cmd->add_option("--k-max", *k_max, "verify k = 0..k_max");
      cmd->add_option("--cap", *cap, "pattern enumeration cap");
      cmd->callback(
          [=, &action] { action = [=] { return run_verify_ck(*p, *alpha, *k_max, *cap); }; });
    }
    {
      auto* cmd = ver->add_subcommand("lemmas", "valuation and order laws at p^(tau+k)");
      auto p = std::make_shared<uint64_t>(0);
      auto alpha = std::make_shared<uint64_t>(0);
      auto k_max = std::make_shared<uint32_t>(6);
      cmd->add_option("--p", *p, "odd prime base")->required();
      cmd->add_option("--alpha", *alpha, "multiplier")->required();
      cmd->add_option("--k-max", *k_max, "verify k = 0..k_max");
      cmd->callback(
          [=, &action] { action = [=] { return run_verify_lemmas(*p, *alpha, *k_max); }; });
    }
    {
      auto* cmd = ver->add_subcommand("bounds", "exact counts against every closed-form bound");
      auto p = std::make_shared<uint64_t>(0);
      auto alpha = std::make_shared<uint64_t>(0);
      auto a_max = std::make_shared<uint64_t>(10000);
      auto ns = std::make_shared<std::vector<uint32_t>>(std::vector<uint32_t>{1, 2, 3});
      auto cap = std::make_shared<uint64_t>(kBruteForceCap);
      cmd->add_option("--p", *p, "odd prime base")->required();
      cmd->add_option("--alpha", *alpha, "multiplier")->required();
      cmd->add_option("--a-max", *a_max, "sweep every range up to a_max");
      cmd->add_option("--n", *ns, "large-digit thresholds")->delimiter(',');
      cmd->add_option("--cap", *cap, "brute-force cap");
      cmd->callback([=, &action] {
        action = [=] { return run_verify_bounds(*p, *alpha, *a_max, *ns, *cap); };
      });
    }
  }

  // scan
  {
    auto* cmd = app.add_subcommand("scan", "windowed survivor scan over exponents");
    auto cfg = std::make_shared<ScanConfig>();
    auto mode = std::make_shared<std::string>("carries");
    auto resume = std::make_shared<std::string>();
    cmd->add_option("--p", cfg->p, "odd prime base (< 256)");
    cmd->add_option("--alpha", cfg->alpha, "multiplier");
    cmd->add_option("--carries", cfg->n_required, "window count needed to certify an exponent");
    cmd->add_option("--window", cfg->window, "window width in digits");
    cmd->add_option("--from", cfg->k_start, "first exponent");
    cmd->add_option("--limit", cfg->k_limit, "stop before this exponent")->required();
    cmd->add_option("--mode", *mode, "carries | large")->check(CLI::IsMember({"carries", "large"}));
    cmd->add_option("--out", cfg->out_path, "survivor file")->required();
    cmd->add_option("--ckpt", cfg->checkpoint_path, "checkpoint file to maintain");
    cmd->add_option("--checkpoint-every", cfg->checkpoint_every, "steps between checkpoints");
    cmd->add_option("--resume", *resume, "continue from this checkpoint");
    cmd->add_option("--threads", cfg->threads, "worker count (CARRYLAB_THREADS fallback)");
    cmd->callback([=, &action] {
      action = [=] {
        ScanConfig c = *cfg;
        c.mode = (*mode == "large") ? ScanMode::large_digits : ScanMode::carries;
        return run_scan(c, *resume);
      };
    });
  }

  // recheck
  {
    auto* cmd = app.add_subcommand("recheck", "settle survivors with widening windows");
    auto p = std::make_shared<uint64_t>(3);
    auto alpha = std::make_shared<uint64_t>(2);
    auto need = std::make_shared<uint32_t>(2);
    auto in = std::make_shared<std::string>();
    auto schedule = std::make_shared<std::vector<uint32_t>>();
    auto mode = std::make_shared<std::string>("carries");
    auto expect = std::make_shared<std::vector<uint64_t>>();
    auto json_path = std::make_shared<std::string>();
    cmd->add_option("--p", *p, "odd prime base (< 256)");
    cmd->add_option("--alpha", *alpha, "multiplier");
    cmd->add_option("--carries", *need, "count needed to certify");
    cmd->add_option("--in", *in, "survivor file")->required();
    auto* exp_opt =
        cmd->add_option("--expect", *expect, "expected final exceptions")->delimiter(',');
    cmd->add_option("--schedule", *schedule, "explicit widths, strictly increasing")
        ->delimiter(',');
    cmd->add_option("--mode", *mode, "carries | large")->check(CLI::IsMember({"carries", "large"}));
    cmd->add_option("--json", *json_path, "also write the report here");
    cmd->callback([=, &action] {
      action = [=] {
        return run_recheck(*p, *alpha, *need, *in, *schedule,
                           (*mode == "large") ? ScanMode::large_digits : ScanMode::carries,
                           *expect, exp_opt->count() > 0, *json_path);
      };
    });
  }

  // champ
  {
    auto* cmd = app.add_subcommand("champ", "exponents whose central binomial m does not divide");
    auto m = std::make_shared<uint64_t>(0);
    auto limit = std::make_shared<uint64_t>(0);
    auto no_members = std::make_shared<bool>(false);
    auto cap = std::make_shared<uint64_t>(kBruteForceCap);
    auto table = std::make_shared<bool>(false);
    cmd->add_option("--m", *m, "odd modulus > 1")->required();
    cmd->add_option("--limit", *limit, "count exponents below this")->required();
    cmd->add_flag("--no-members", *no_members, "suppress the member list");
    cmd->add_option("--cap", *cap, "brute-force cap");
    cmd->add_flag("--table", *table, "human-readable output");
    cmd->callback([=, &action] {
      action = [=] { return run_champ(*m, *limit, !*no_members, *cap, *table); };
    });
  }

  // count
  {
    auto* cmd = app.add_subcommand("count", "exact sparse-large-digit count with bounds");
    auto p = std::make_shared<uint64_t>(0);
    auto alpha = std::make_shared<uint64_t>(0);
    auto n = std::make_shared<uint32_t>(1);
    auto limit = std::make_shared<uint64_t>(0);
    auto members = std::make_shared<bool>(false);
    auto cap = std::make_shared<uint64_t>(kBruteForceCap);
    cmd->add_option("--p", *p, "odd prime base")->required();
    cmd->add_option("--alpha", *alpha, "multiplier")->required();
    cmd->add_option("--n", *n, "large-digit threshold");
    cmd->add_option("--limit", *limit, "count exponents below this")->required();
    cmd->add_flag("--members", *members, "list qualifying exponents");
    cmd->add_option("--cap", *cap, "brute-force cap");
    cmd->callback([=, &action] {
      action = [=] { return run_count(*p, *alpha, *n, *limit, *members, *cap); };
    });
  }

  // stats
  {
    auto* cmd = app.add_subcommand("stats", "carry growth against the predicted slope");
    auto p = std::make_shared<uint64_t>(0);
    auto from = std::make_shared<uint64_t>(1);
    auto to = std::make_shared<uint64_t>(0);
    auto stride = std::make_shared<uint64_t>(1);
    auto cap = std::make_shared<uint64_t>(kStatsCap);
    auto csv = std::make_shared<std::string>();
    auto table = std::make_shared<bool>(false);
    cmd->add_option("--p", *p, "odd prime base")->required();
    cmd->add_option("--from", *from, "first exponent");
    cmd->add_option("--to", *to, "last exponent")->required();
    cmd->add_option("--stride", *stride, "exponent stride");
    cmd->add_option("--cap", *cap, "exact-digit cap");
    cmd->add_option("--csv", *csv, "per-point CSV path, or - for stdout");
    cmd->add_flag("--table", *table, "human-readable output");
    cmd->callback([=, &action] {
      action = [=] { return run_stats(*p, *from, *to, *stride, *cap, *csv, *table); };
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    return action ? action() : 0;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
