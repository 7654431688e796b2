#pragma once

// Windowed exponent scan. The state holds the exact low-W base-p digits
// of alpha^k; carries propagate strictly upward, so carry and large-digit
// counts taken inside the window are lower bounds of the full-precision
// counts (and exact while the value still fits the window). Exponents the
// window cannot certify are appended to a survivor file and settled later
// by recheck with widening windows until the count is exact.

#include <cstdint>
#include <string>
#include <vector>

#include "carrylab/kernels.hpp"

namespace carrylab {

enum class ScanMode { carries, large_digits };

struct WindowState {
  uint64_t p = 3;
  uint64_t alpha = 2;
  uint32_t width = 35;
  uint64_t k = 0;
  uint32_t active_len = 1;
  std::vector<uint8_t> digits;  // size == width, exact low digits of alpha^k
};

struct ScanConfig {
  uint64_t p = 3;
  uint64_t alpha = 2;
  uint32_t n_required = 2;
  uint32_t window = 35;
  uint64_t k_start = 0;
  uint64_t k_limit = 0;
  ScanMode mode = ScanMode::carries;
  std::string out_path;
  std::string checkpoint_path;    // empty = no checkpoints
  uint64_t checkpoint_every = 0;  // steps between checkpoints; 0 = only at end
  unsigned threads = 1;           // survivor output is independent of this
};

struct ScanSummary {
  uint64_t checked = 0;
  uint64_t survivors = 0;
  std::string out_path;
  double seconds = 0.0;
  double steps_per_sec = 0.0;
  std::string kernel;
};

WindowState window_seed(uint64_t p, uint64_t alpha, uint32_t width, uint64_t k0);

// Counts for the value alpha^k currently held, then advance to k+1.
kernels::StepCounts window_step(WindowState& st);

ScanSummary scan(const ScanConfig& cfg);
// Continue a checkpointed scan; the survivor file is first truncated to
// entries below the checkpoint exponent so the result is byte-identical
// to an uninterrupted run.
ScanSummary scan_resume(const ScanConfig& cfg, const std::string& checkpoint_path);

void checkpoint_save(const WindowState& st, const std::string& path);
WindowState checkpoint_load(const std::string& path);

std::vector<uint64_t> load_survivors(const std::string& path);
void write_survivors(const std::vector<uint64_t>& ks, const std::string& path);

enum class RecheckStatus { certified, exception, undecided };
const char* recheck_status_name(RecheckStatus s);

struct RecheckItem {
  uint64_t k = 0;
  RecheckStatus status = RecheckStatus::undecided;
  uint64_t count = 0;  // exact when status != certified at a partial width
  uint32_t width_used = 0;
};

struct RecheckReport {
  std::vector<RecheckItem> items;
  std::vector<uint64_t> exceptions() const;
  uint64_t undecided() const;
};

// Widths: explicit schedule, or empty for 50, 80, then doubling until the
// window provably covers every digit of alpha^k (the count is then exact).
RecheckReport recheck(uint64_t p, uint64_t alpha, uint32_t n_required,
                      const std::vector<uint64_t>& ks, std::vector<uint32_t> schedule = {},
                      ScanMode mode = ScanMode::carries);

std::string recheck_json(const RecheckReport& report);

}  // namespace carrylab
