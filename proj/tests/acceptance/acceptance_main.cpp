// Acceptance suite: end-to-end checks of the library against its pinned
// targets, one line per criterion. Exit code is the number of failed
// criteria (the heuristic slope study reports but never fails).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "carrylab/bigint.hpp"
#include "carrylab/counting.hpp"
#include "carrylab/digitseq.hpp"
#include "carrylab/errors.hpp"
#include "carrylab/kernels.hpp"
#include "carrylab/numctx.hpp"
#include "carrylab/scanner.hpp"
#include "carrylab/statlab.hpp"

using namespace carrylab;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

fs::path work_dir() {
  static fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "carrylab_acceptance";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

std::vector<std::pair<uint64_t, uint64_t>> context_grid() {
  std::vector<std::pair<uint64_t, uint64_t>> g;
  for (uint64_t p : {3ull, 5ull, 7ull, 11ull, 13ull})
    for (uint64_t alpha = 2; alpha <= 10; ++alpha)
      if (alpha % p != 0) g.emplace_back(p, alpha);
  return g;
}

std::string join(const std::vector<uint64_t>& v) {
  std::string s = "{";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s + "}";
}

// 1. scan + recheck over k < 10^7 reproduces the exception set exactly
// (CARRYLAB_LONG_SCAN=1 stretches the range to 10^9)
Outcome criterion1() {
  Outcome o;
  ScanConfig cfg;
  cfg.p = 3;
  cfg.alpha = 2;
  cfg.n_required = 2;
  cfg.window = 35;
  cfg.k_limit = std::getenv("CARRYLAB_LONG_SCAN") ? 1'000'000'000 : 10'000'000;
  cfg.out_path = (work_dir() / "c1_survivors.txt").string();
  ScanSummary sum = scan(cfg);
  RecheckReport rep = recheck(3, 2, 2, load_survivors(cfg.out_path));
  const std::vector<uint64_t> expect{0, 1, 2, 6, 8};
  std::vector<uint64_t> got = rep.exceptions();
  o.pass = (got == expect) && rep.undecided() == 0;
  char buf[160];
  snprintf(buf, sizeof buf, "exceptions %s, %llu survivors, %.0f steps/s (%s)%s",
           join(got).c_str(), static_cast<unsigned long long>(sum.survivors), sum.steps_per_sec,
           sum.kernel.c_str(), sum.steps_per_sec < 1e6 ? " [below 1e6 steps/s]" : "");
  o.detail = buf;
  return o;
}

// 2. pattern cover holds for the whole grid up to gamma*p^k <= 10^6
Outcome criterion2() {
  Outcome o;
  uint64_t pairs = 0, covers = 0, patterns = 0;
  for (auto [p, alpha] : context_grid()) {
    BasePContext ctx = make_context(p, alpha);
    ++pairs;
    uint64_t size = ctx.gamma;
    for (uint32_t k = 0; size <= 1'000'000; ++k) {
      VerificationReport rep = verify_pattern_cover(ctx, k, 1'000'000);
      ++covers;
      patterns += rep.checked;
      if (!rep.pass) {
        o.pass = false;
        o.detail = "failed at p=" + std::to_string(p) + " alpha=" + std::to_string(alpha) +
                   " k=" + std::to_string(k) + ": " + rep.detail;
        return o;
      }
      if (size > 1'000'000 / p) break;
      size *= p;
    }
  }
  o.detail = std::to_string(pairs) + " pairs, " + std::to_string(covers) + " covers, " +
             std::to_string(patterns) + " patterns";
  return o;
}

// 3. valuation and order laws at p^(tau+k), exact, k <= 6
Outcome criterion3() {
  Outcome o;
  uint64_t checks = 0;
  for (auto [p, alpha] : context_grid()) {
    BasePContext ctx = make_context(p, alpha);
    uint64_t exp = ctx.gamma;
    for (uint32_t k = 0; k <= 6; ++k) {
      const double bits = static_cast<double>(exp) * std::log2(static_cast<double>(alpha));
      bool val_ok;
      if (bits <= 1e5) {
        BigUnsigned big = BigUnsigned::pow_u64(alpha, exp);
        big.sub_u64(1);
        val_ok = valuation(std::move(big), p) == ctx.tau + k;
      } else {
        val_ok = pow_valuation_is(alpha, exp, p, ctx.tau + k) &&
                 !pow_valuation_is(alpha, exp, p, ctx.tau + k + 1);
      }
      const bool ord_ok = order_mod_power(ctx, k) == exp;
      checks += 2;
      if (!val_ok || !ord_ok) {
        o.pass = false;
        o.detail = "failed at p=" + std::to_string(p) + " alpha=" + std::to_string(alpha) +
                   " k=" + std::to_string(k);
        return o;
      }
      exp *= p;
    }
  }
  o.detail = std::to_string(checks) + " exact checks";
  return o;
}

// 4. every closed-form bound holds against exact counts up to 10^5
Outcome criterion4() {
  Outcome o;
  uint64_t checked = 0;
  for (uint64_t p : {3ull, 5ull, 7ull}) {
    BasePContext ctx = make_context(p, 2);
    BoundSweep sweep = sweep_bounds(ctx, 100'000, {1, 2, 3}, 100'000);
    checked += sweep.checked;
    if (!sweep.violations.empty()) {
      o.pass = false;
      o.detail = "violation: " + report_json_line(sweep.violations.front());
      return o;
    }
  }
  BasePContext c32 = make_context(3, 2);
  const uint64_t s319 = s_count(c32, 1, 9).count;
  const uint64_t s316 = s_count(c32, 1, 6).count;
  const uint64_t s329 = s_count(c32, 2, 9).count;
  if (s319 != 3 || s316 != 2 || s329 != 7) {
    o.pass = false;
    o.detail = "spot values off: S_3^1(9)=" + std::to_string(s319) +
               " S_3^1(6)=" + std::to_string(s316) + " S_3^2(9)=" + std::to_string(s329);
    return o;
  }
  o.detail =
      std::to_string(checked) + " inequalities, spot values S_3^1(9)=3 S_3^1(6)=2 S_3^2(9)=7";
  return o;
}

// 5. window carries equal the exact binomial valuation (Kummer), s <= 12
Outcome criterion5() {
  Outcome o;
  uint64_t checks = 0;
  for (uint64_t p : {3ull, 5ull, 7ull}) {
    PowerStats st = power_stats(p, 2, 13, 100);
    for (uint64_t s = 0; s <= 12; ++s) {
      BigUnsigned c = BigUnsigned::binomial(uint64_t(2) << s, uint64_t(1) << s);
      if (st.carries[s] != valuation(std::move(c), p)) {
        o.pass = false;
        o.detail = "mismatch at p=" + std::to_string(p) + " s=" + std::to_string(s);
        return o;
      }
      ++checks;
    }
  }
  o.detail = std::to_string(checks) + " exact comparisons";
  return o;
}

// 6. champ_{p^n}(a) <= S_p^n(a) for every a <= 10^4, plus champ_9(9)
Outcome criterion6() {
  Outcome o;
  for (uint64_t p : {3ull, 5ull, 7ull}) {
    PowerStats st = power_stats(p, 2, 10'000, 10'000);
    for (uint32_t n : {1u, 2u}) {
      uint64_t champ_cum = 0, s_cum = 0;
      for (uint64_t a = 1; a <= 10'000; ++a) {
        champ_cum += st.carries[a - 1] < n;
        s_cum += st.large[a - 1] < n;
        if (champ_cum > s_cum) {
          o.pass = false;
          o.detail = "champ exceeds S at p=" + std::to_string(p) + " n=" + std::to_string(n) +
                     " a=" + std::to_string(a);
          return o;
        }
      }
    }
  }
  ChampCount c9 = champ_count(9, 9, true);
  if (c9.count != 5 || c9.members != std::vector<uint64_t>{0, 1, 2, 6, 8}) {
    o.pass = false;
    o.detail = "champ_9(9) = " + std::to_string(c9.count) + " members " + join(c9.members);
    return o;
  }
  o.detail = "60000 prefix inequalities, champ_9(9)=5 members {0,1,2,6,8}";
  return o;
}

// 7. window counts never exceed full precision; recheck matches the oracle
Outcome criterion7() {
  Outcome o;
  PowerStats full = power_stats(3, 2, 2001, 5000);
  for (uint32_t width : {4u, 10u, 35u}) {
    WindowState st = window_seed(3, 2, width, 0);
    std::vector<uint64_t> survivors;
    for (uint64_t k = 0; k <= 2000; ++k) {
      auto counts = window_step(st);
      if (counts.carries > full.carries[k] || counts.large > full.large[k]) {
        o.pass = false;
        o.detail = "window count exceeds full precision at W=" + std::to_string(width) +
                   " k=" + std::to_string(k);
        return o;
      }
      if (counts.carries < 2) survivors.push_back(k);
    }
    RecheckReport rep = recheck(3, 2, 2, survivors);
    for (const auto& item : rep.items) {
      const uint32_t oracle = full.carries[item.k];
      const bool ok = (item.status == RecheckStatus::exception)
                          ? (oracle < 2 && item.count == oracle)
                          : (item.status == RecheckStatus::certified && oracle >= 2);
      if (!ok) {
        o.pass = false;
        o.detail = "recheck disagrees with the oracle at W=" + std::to_string(width) +
                   " k=" + std::to_string(item.k);
        return o;
      }
    }
    // completeness: every true exception below 2000 was flagged
    for (uint64_t k = 0; k <= 2000; ++k) {
      if (full.carries[k] < 2 &&
          std::find(survivors.begin(), survivors.end(), k) == survivors.end()) {
        o.pass = false;
        o.detail =
            "true exception missed at W=" + std::to_string(width) + " k=" + std::to_string(k);
        return o;
      }
    }
  }
  o.detail = "widths {4,10,35} sound over k <= 2000, recheck matches the exact counts";
  return o;
}

// 8. heuristic slope study: report-only
Outcome criterion8() {
  Outcome o;
  std::string parts;
  for (uint64_t p : {3ull, 5ull, 7ull}) {
    EpsSeries s = eps_series(p, 1000, 4000);
    const double rel =
        static_cast<double>(std::fabs(s.fitted_slope - s.predicted_slope) / s.predicted_slope);
    char buf[96];
    snprintf(buf, sizeof buf, "p=%llu fit %.4f vs %.4f (%.1f%%)%s ",
             static_cast<unsigned long long>(p), static_cast<double>(s.fitted_slope),
             static_cast<double>(s.predicted_slope), rel * 100.0,
             rel > 0.1 ? " [outside 10%, heuristic warning]" : "");
    parts += buf;
  }
  o.detail = parts;
  return o;  // warnings only, never fails
}

// 9. segmented, threaded and resumed scans are byte-identical
Outcome criterion9() {
  Outcome o;
  const uint64_t limit = 100'000;
  ScanConfig base;
  base.k_limit = limit;

  ScanConfig single = base;
  single.out_path = (work_dir() / "c9_single.txt").string();
  scan(single);
  const std::string expect = slurp(single.out_path);

  ScanConfig threaded = base;
  threaded.threads = 3;
  threaded.out_path = (work_dir() / "c9_threaded.txt").string();
  scan(threaded);

  ScanConfig segA = base;
  segA.k_limit = 43'210;
  segA.out_path = (work_dir() / "c9_segA.txt").string();
  scan(segA);
  ScanConfig segB = base;
  segB.k_start = 43'210;
  segB.out_path = (work_dir() / "c9_segB.txt").string();
  scan(segB);

  ScanConfig part = base;
  part.k_limit = 52'341;
  part.out_path = (work_dir() / "c9_resumed.txt").string();
  part.checkpoint_path = (work_dir() / "c9.ckpt").string();
  scan(part);
  ScanConfig rest = base;
  rest.out_path = part.out_path;
  scan_resume(rest, part.checkpoint_path);

  const bool threads_ok = slurp(threaded.out_path) == expect;
  const bool segments_ok = slurp(segA.out_path) + slurp(segB.out_path) == expect;
  const bool resume_ok = slurp(part.out_path) == expect;
  o.pass = threads_ok && segments_ok && resume_ok;
  o.detail = std::string("threads ") + (threads_ok ? "ok" : "DIFFER") + ", segments " +
             (segments_ok ? "ok" : "DIFFER") + ", resume " + (resume_ok ? "ok" : "DIFFER");
  return o;
}

}  // namespace

int main() {
  struct Entry {
    int id;
    const char* name;
    Outcome (*fn)();
    bool warn_only;
  };
  const Entry entries[] = {
      {1, "exception-set reproduction (k < 1e7)", criterion1, false},
      {2, "pattern cover on the full grid", criterion2, false},
      {3, "valuation and order laws", criterion3, false},
      {4, "bound suite up to 1e5", criterion4, false},
      {5, "Kummer oracle equivalence", criterion5, false},
      {6, "champ/S inequality", criterion6, false},
      {7, "scanner soundness and recheck", criterion7, false},
      {8, "slope study (heuristic)", criterion8, true},
      {9, "determinism and resume", criterion9, false},
  };
  int failures = 0;
  for (const Entry& e : entries) {
    Outcome o;
    try {
      o = e.fn();
    } catch (const std::exception& ex) {
      o.pass = false;
      o.detail = std::string("exception: ") + ex.what();
    }
    if (!o.pass && !e.warn_only) ++failures;
    std::cout << (o.pass ? "[PASS]" : (e.warn_only ? "[WARN]" : "[FAIL]")) << " criterion " << e.id
              << ": " << e.name << " - " << o.detail << "\n";
  }
  std::cout << (failures == 0 ? "ACCEPTANCE PASSED" : "ACCEPTANCE FAILED") << " ("
            << (sizeof(entries) / sizeof(entries[0]) - failures) << "/9)\n";
  return failures;
}
