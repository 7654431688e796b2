#pragma once

#include <stdexcept>
#include <string>

namespace carrylab {

enum class Errc {
  NonPrimeBase,
  SharedFactor,
  AlphaUnitDegenerate,
  IndexOrder,
  ZeroInput,
  WindowTooSmall,
  EnumerationCapExceeded,
  BruteForceCapExceeded,
  CapExceeded,
  NotApplicable,
  EvenModulus,
  DomainViolation,
  IoError,
  CorruptCheckpoint,
  ScheduleExhausted,
  EmptySeries,
  ContextTooLarge,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const { return code_; }

private:
  Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& what) { throw Error(code, what); }

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::NonPrimeBase: return "NonPrimeBase";
    case Errc::SharedFactor: return "SharedFactor";
    case Errc::AlphaUnitDegenerate: return "AlphaUnitDegenerate";
    case Errc::IndexOrder: return "IndexOrder";
    case Errc::ZeroInput: return "ZeroInput";
    case Errc::WindowTooSmall: return "WindowTooSmall";
    case Errc::EnumerationCapExceeded: return "EnumerationCapExceeded";
    case Errc::BruteForceCapExceeded: return "BruteForceCapExceeded";
    case Errc::CapExceeded: return "CapExceeded";
    case Errc::NotApplicable: return "NotApplicable";
    case Errc::EvenModulus: return "EvenModulus";
    case Errc::DomainViolation: return "DomainViolation";
    case Errc::IoError: return "IoError";
    case Errc::CorruptCheckpoint: return "CorruptCheckpoint";
    case Errc::ScheduleExhausted: return "ScheduleExhausted";
    case Errc::EmptySeries: return "EmptySeries";
    case Errc::ContextTooLarge: return "ContextTooLarge";
  }
  return "UnknownError";
}

}  // namespace carrylab
