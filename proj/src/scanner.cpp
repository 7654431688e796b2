#include "carrylab/scanner.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

#include "carrylab/errors.hpp"
#include "carrylab/modmath.hpp"
#include "carrylab/numctx.hpp"

namespace carrylab {

namespace {

constexpr char kCheckpointMagic[] = "carrylab-ckpt v1";

uint64_t fnv1a64(const std::string& data) {
  uint64_t h = 14695981039346656037ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

void validate_scan_params(uint64_t p, uint64_t alpha, uint32_t width) {
  if (p < 3 || p % 2 == 0 || !is_prime_u64(p))
    raise(Errc::NonPrimeBase, "scan base must be an odd prime, got " + std::to_string(p));
  if (p >= 256) raise(Errc::DomainViolation, "scan base must be below 256");
  if (alpha < 2) raise(Errc::DomainViolation, "scan multiplier must be >= 2");
  if (alpha >= (uint64_t(1) << 31)) raise(Errc::DomainViolation, "scan multiplier must fit 31 bits");
  if (alpha % p == 0) raise(Errc::SharedFactor, "multiplier divisible by base");
  if (width < 1) raise(Errc::WindowTooSmall, "window must hold at least one digit");
}

uint32_t significant_len(const std::vector<uint8_t>& digits) {
  uint32_t len = static_cast<uint32_t>(digits.size());
  while (len > 1 && digits[len - 1] == 0) --len;
  return len;
}

// width that provably covers every digit of 2*alpha^k
uint32_t exact_cover_width(uint64_t p, uint64_t alpha, uint64_t k) {
  const long double bits =
      static_cast<long double>(k) * std::log2(static_cast<long double>(alpha)) + 1.0L;
  const long double w = bits / std::log2(static_cast<long double>(p)) + 2.0L;
  if (w >= static_cast<long double>(~uint32_t(0))) return ~uint32_t(0);
  return static_cast<uint32_t>(w);
}

// widest window recheck will materialize (64M digits)
constexpr uint32_t kRecheckWidthCap = uint32_t(1) << 26;

}  // namespace

WindowState window_seed(uint64_t p, uint64_t alpha, uint32_t width, uint64_t k0) {
  validate_scan_params(p, alpha, width);
  WindowState st;
  st.p = p;
  st.alpha = alpha;
  st.width = width;
  st.k = k0;
  st.digits.assign(width, 0);

  BasePContext ctx = make_context(p, alpha);
  const uint64_t red = (width >= ctx.tau) ? reduce_exponent(ctx, k0, width) : k0;

  // p^width within 64 bits: plain modpow; otherwise digit-domain
  uint64_t mod = 1;
  bool fits = true;
  for (uint32_t i = 0; i < width; ++i) {
    if (mod > (uint64_t(1) << 62) / p) {
      fits = false;
      break;
    }
    mod *= p;
  }
  if (fits) {
    uint64_t v = pow_mod(alpha % mod, red, mod);
    for (uint32_t i = 0; i < width && v; ++i) {
      st.digits[i] = static_cast<uint8_t>(v % p);
      v /= p;
    }
  } else {
    std::vector<uint64_t> r = ppow::pow(alpha, red, p, width);
    for (uint32_t i = 0; i < width; ++i) st.digits[i] = static_cast<uint8_t>(r[i]);
  }
  st.active_len = significant_len(st.digits);
  return st;
}

kernels::StepCounts window_step(WindowState& st) {
  const auto& k = kernels::active_kernels();
  const uint8_t p = static_cast<uint8_t>(st.p);
  kernels::StepCounts counts;
  if (st.alpha == 2) {
    counts = k.double_step(st.digits.data(), st.active_len, p);
    if (counts.carry_out && st.active_len < st.width) st.digits[st.active_len++] = 1;
  } else {
    counts = k.inspect(st.digits.data(), st.active_len, p);
    uint32_t carry =
        k.mul_small(st.digits.data(), st.active_len, p, static_cast<uint32_t>(st.alpha));
    while (carry && st.active_len < st.width) {
      st.digits[st.active_len++] = static_cast<uint8_t>(carry % st.p);
      carry /= static_cast<uint32_t>(st.p);
    }
  }
  ++st.k;
  return counts;
}

namespace {

// survivors for k in [state.k, k_to) appended to out
void scan_segment(WindowState& st, uint64_t k_to, ScanMode mode, uint32_t n_required,
                  std::vector<uint64_t>& out) {
  const auto& kern = kernels::active_kernels();
  const uint8_t p = static_cast<uint8_t>(st.p);
  if (st.alpha == 2) {
    while (st.k < k_to) {
      auto counts = kern.double_step(st.digits.data(), st.active_len, p);
      if (counts.carry_out && st.active_len < st.width) st.digits[st.active_len++] = 1;
      uint32_t got = (mode == ScanMode::carries) ? counts.carries : counts.large;
      if (got < n_required) out.push_back(st.k);
      ++st.k;
    }
  } else {
    while (st.k < k_to) {
      auto counts = window_step(st);
      uint32_t got = (mode == ScanMode::carries) ? counts.carries : counts.large;
      if (got < n_required) out.push_back(st.k - 1);
    }
  }
}

void validate_config(const ScanConfig& cfg) {
  validate_scan_params(cfg.p, cfg.alpha, cfg.window);
  if (cfg.window < 2) raise(Errc::WindowTooSmall, "scan window must be >= 2 digits");
  if (cfg.n_required < 1) raise(Errc::DomainViolation, "n_required must be >= 1");
  if (cfg.out_path.empty()) raise(Errc::DomainViolation, "scan needs an output path");
  if (cfg.k_limit < cfg.k_start) raise(Errc::DomainViolation, "k_limit below k_start");
}

ScanSummary finish_summary(const ScanConfig& cfg, uint64_t checked, uint64_t survivors,
                           std::chrono::steady_clock::time_point t0) {
  ScanSummary sum;
  sum.checked = checked;
  sum.survivors = survivors;
  sum.out_path = cfg.out_path;
  sum.kernel = kernels::active_kernels().name;
  sum.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  sum.steps_per_sec = sum.seconds > 0 ? static_cast<double>(checked) / sum.seconds : 0.0;
  return sum;
}

ScanSummary scan_from(const ScanConfig& cfg, WindowState st,
                      const std::vector<uint64_t>& kept_survivors) {
  const auto t0 = std::chrono::steady_clock::now();
  const uint64_t resume_k = st.k;

  std::ofstream out(cfg.out_path, std::ios::binary | std::ios::trunc);
  if (!out) raise(Errc::IoError, "cannot open " + cfg.out_path);
  uint64_t survivors = 0;
  auto emit = [&](uint64_t k) {
    out << k << '\n';
    ++survivors;
  };
  for (uint64_t k : kept_survivors) emit(k);

  const bool parallel = cfg.threads > 1 && cfg.k_limit - st.k > 1;
  if (!parallel) {
    std::vector<uint64_t> batch;
    uint64_t next_ckpt = cfg.checkpoint_every ? st.k + cfg.checkpoint_every : cfg.k_limit;
    while (st.k < cfg.k_limit) {
      uint64_t stop = std::min(cfg.k_limit, next_ckpt);
      batch.clear();
      scan_segment(st, stop, cfg.mode, cfg.n_required, batch);
      for (uint64_t k : batch) emit(k);
      if (!cfg.checkpoint_path.empty()) {
        out.flush();
        checkpoint_save(st, cfg.checkpoint_path);
      }
      next_ckpt = cfg.checkpoint_every ? stop + cfg.checkpoint_every : cfg.k_limit;
    }
  } else {
    const uint64_t span = cfg.k_limit - st.k;
    const uint64_t nseg = std::min<uint64_t>(cfg.threads, span);
    const uint64_t seg = (span + nseg - 1) / nseg;
    std::vector<std::vector<uint64_t>> results(nseg);
    std::vector<std::thread> workers;
    workers.reserve(nseg);
    const uint64_t base = st.k;
    for (uint64_t i = 0; i < nseg; ++i) {
      workers.emplace_back([&, i] {
        const uint64_t from = base + i * seg;
        const uint64_t to = std::min(cfg.k_limit, from + seg);
        WindowState ws = (i == 0) ? st : window_seed(cfg.p, cfg.alpha, cfg.window, from);
        scan_segment(ws, to, cfg.mode, cfg.n_required, results[i]);
      });
    }
    for (auto& w : workers) w.join();
    for (const auto& r : results)
      for (uint64_t k : r) emit(k);
  }
  out.flush();
  if (!out) raise(Errc::IoError, "write failed on " + cfg.out_path);
  return finish_summary(cfg, cfg.k_limit - resume_k, survivors, t0);
}

}  // namespace

ScanSummary scan(const ScanConfig& cfg) {
  validate_config(cfg);
  WindowState st = window_seed(cfg.p, cfg.alpha, cfg.window, cfg.k_start);
  return scan_from(cfg, std::move(st), {});
}

ScanSummary scan_resume(const ScanConfig& cfg, const std::string& checkpoint_path) {
  validate_config(cfg);
  WindowState st = checkpoint_load(checkpoint_path);
  if (st.p != cfg.p || st.alpha != cfg.alpha || st.width != cfg.window)
    raise(Errc::DomainViolation, "checkpoint does not match scan configuration");
  if (st.k < cfg.k_start || st.k > cfg.k_limit)
    raise(Errc::DomainViolation, "checkpoint exponent outside scan range");
  std::vector<uint64_t> kept;
  for (uint64_t k : load_survivors(cfg.out_path))
    if (k >= cfg.k_start && k < st.k) kept.push_back(k);
  return scan_from(cfg, std::move(st), kept);
}

void checkpoint_save(const WindowState& st, const std::string& path) {
  std::ostringstream body;
  body << st.p << ' ' << st.alpha << ' ' << st.width << ' ' << st.k << ' ' << st.active_len
       << '\n';
  for (uint32_t i = 0; i < st.width; ++i) {
    if (i) body << ' ';
    body << static_cast<unsigned>(st.digits[i]);
  }
  body << '\n';
  char digest[17];
  snprintf(digest, sizeof digest, "%016llx",
           static_cast<unsigned long long>(fnv1a64(body.str())));
  // write-then-rename so an interrupted save never clobbers a good checkpoint
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) raise(Errc::IoError, "cannot open " + tmp);
    out << kCheckpointMagic << '\n' << body.str() << digest << '\n';
    out.flush();
    if (!out) raise(Errc::IoError, "write failed on " + tmp);
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    raise(Errc::IoError, "cannot move " + tmp + " into place");
}

WindowState checkpoint_load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(Errc::IoError, "cannot open " + path);
  std::string magic, fields, digitline, digest, extra;
  if (!std::getline(in, magic) || !std::getline(in, fields) || !std::getline(in, digitline) ||
      !std::getline(in, digest))
    raise(Errc::CorruptCheckpoint, "truncated checkpoint " + path);
  if (std::getline(in, extra) && !extra.empty())
    raise(Errc::CorruptCheckpoint, "trailing data in " + path);
  if (magic != kCheckpointMagic) raise(Errc::CorruptCheckpoint, "bad magic in " + path);

  char expect[17];
  snprintf(expect, sizeof expect, "%016llx",
           static_cast<unsigned long long>(fnv1a64(fields + "\n" + digitline + "\n")));
  if (digest != expect) raise(Errc::CorruptCheckpoint, "checksum mismatch in " + path);

  WindowState st;
  std::istringstream fs(fields);
  if (!(fs >> st.p >> st.alpha >> st.width >> st.k >> st.active_len))
    raise(Errc::CorruptCheckpoint, "bad field line in " + path);
  std::istringstream ds(digitline);
  st.digits.reserve(st.width);
  unsigned d;
  while (ds >> d) {
    if (d >= st.p) raise(Errc::CorruptCheckpoint, "digit out of range in " + path);
    st.digits.push_back(static_cast<uint8_t>(d));
  }
  if (st.digits.size() != st.width || st.active_len > st.width || st.active_len == 0)
    raise(Errc::CorruptCheckpoint, "inconsistent state in " + path);
  return st;
}

std::vector<uint64_t> load_survivors(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(Errc::IoError, "cannot open " + path);
  std::vector<uint64_t> ks;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    size_t pos = 0;
    uint64_t v = 0;
    try {
      v = std::stoull(line, &pos);
    } catch (const std::exception&) {
      raise(Errc::IoError, "bad survivor line in " + path + ": " + line);
    }
    if (pos != line.size()) raise(Errc::IoError, "bad survivor line in " + path + ": " + line);
    ks.push_back(v);
  }
  return ks;
}

void write_survivors(const std::vector<uint64_t>& ks, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) raise(Errc::IoError, "cannot open " + path);
  for (uint64_t k : ks) out << k << '\n';
  out.flush();
  if (!out) raise(Errc::IoError, "write failed on " + path);
}

const char* recheck_status_name(RecheckStatus s) {
  switch (s) {
    case RecheckStatus::certified: return "certified";
    case RecheckStatus::exception: return "exception";
    case RecheckStatus::undecided: return "undecided";
  }
  return "unknown";
}

std::vector<uint64_t> RecheckReport::exceptions() const {
  std::vector<uint64_t> out;
  for (const auto& it : items)
    if (it.status == RecheckStatus::exception) out.push_back(it.k);
  return out;
}

uint64_t RecheckReport::undecided() const {
  uint64_t n = 0;
  for (const auto& it : items) n += it.status == RecheckStatus::undecided;
  return n;
}

RecheckReport recheck(uint64_t p, uint64_t alpha, uint32_t n_required,
                      const std::vector<uint64_t>& ks, std::vector<uint32_t> schedule,
                      ScanMode mode) {
  validate_scan_params(p, alpha, 2);
  const bool auto_widths = schedule.empty();
  if (!auto_widths) {
    for (size_t i = 1; i < schedule.size(); ++i)
      if (schedule[i] <= schedule[i - 1])
        raise(Errc::DomainViolation, "recheck schedule must be strictly increasing");
  }
  const auto& kern = kernels::active_kernels();

  RecheckReport report;
  report.items.reserve(ks.size());
  for (uint64_t k : ks) {
    const uint32_t cover = exact_cover_width(p, alpha, k);
    RecheckItem item;
    item.k = k;

    uint32_t width = 0;
    size_t si = 0;
    uint32_t next_auto = 50;
    for (;;) {
      if (auto_widths) {
        width = next_auto;
        next_auto = (next_auto == 50) ? 80 : next_auto * 2;
      } else {
        if (si >= schedule.size()) break;  // undecided
        width = schedule[si++];
      }
      const uint32_t eff = std::min(width, cover);
      if (eff > kRecheckWidthCap)
        raise(Errc::CapExceeded,
              "recheck width " + std::to_string(eff) + " for k = " + std::to_string(k) +
                  " exceeds the supported maximum");
      WindowState st = window_seed(p, alpha, eff, k);
      auto counts = kern.inspect(st.digits.data(), st.active_len, static_cast<uint8_t>(p));
      const uint32_t got = (mode == ScanMode::carries) ? counts.carries : counts.large;
      item.count = got;
      item.width_used = eff;
      if (got >= n_required) {
        item.status = RecheckStatus::certified;
        break;
      }
      if (eff >= cover) {
        item.status = RecheckStatus::exception;  // the count is exact here
        break;
      }
    }
    report.items.push_back(item);
  }
  return report;
}

std::string recheck_json(const RecheckReport& report) {
  std::string s = "[";
  for (size_t i = 0; i < report.items.size(); ++i) {
    const auto& it = report.items[i];
    if (i) s += ',';
    s += "{\"k\":" + std::to_string(it.k) + ",\"status\":\"" + recheck_status_name(it.status) +
         "\",\"exact_or_lowerbound_count\":" + std::to_string(it.count) +
         ",\"width_used\":" + std::to_string(it.width_used) + "}";
  }
  s += ']';
  return s;
}

}  // namespace carrylab
