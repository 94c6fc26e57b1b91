#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ltcg {

enum class ErrorKind {
  InvalidArgument,
  Parse,
  TooLarge,
  NotInSpan,
  RankDeficient,
  PremiseViolated,
  SupportBlowup,
  NoValidTester,
  DegenerateGraph,
  NotGenerating,
  Disconnected,
  DistanceTooSmall,
  NotSpanning,
  EmptySet,
  PreconditionFailed,
  NotCosetInvariant,
  DegenerateEmbedding,
  ZeroDual,
  NotBasisTester,
  Io,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::NotInSpan: return "NotInSpan";
    case ErrorKind::RankDeficient: return "RankDeficient";
    case ErrorKind::PremiseViolated: return "PremiseViolated";
    case ErrorKind::SupportBlowup: return "SupportBlowup";
    case ErrorKind::NoValidTester: return "NoValidTester";
    case ErrorKind::DegenerateGraph: return "DegenerateGraph";
    case ErrorKind::NotGenerating: return "NotGenerating";
    case ErrorKind::Disconnected: return "Disconnected";
    case ErrorKind::DistanceTooSmall: return "DistanceTooSmall";
    case ErrorKind::NotSpanning: return "NotSpanning";
    case ErrorKind::EmptySet: return "EmptySet";
    case ErrorKind::PreconditionFailed: return "PreconditionFailed";
    case ErrorKind::NotCosetInvariant: return "NotCosetInvariant";
    case ErrorKind::DegenerateEmbedding: return "DegenerateEmbedding";
    case ErrorKind::ZeroDual: return "ZeroDual";
    case ErrorKind::NotBasisTester: return "NotBasisTester";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

/// Every library failure is reported through this type; `kind()` is stable.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool cond, ErrorKind kind, const std::string& what) {
  if (!cond) fail(kind, what);
}

/// Thrown when an identity that should hold by construction fails.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Internal consistency check for proven identities; a failure is a bug, not bad input.
inline void ensure(bool cond, const char* what) {
  if (!cond) throw InvariantViolation(std::string("invariant violated: ") + what);
}

}  // namespace ltcg
