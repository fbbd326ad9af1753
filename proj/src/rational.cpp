#include "presched/rational.hpp"

#include "presched/error.hpp"

#include <charconv>

namespace presched {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::MissingJob: return "MISSING_JOB";
    case ErrorCode::ZeroDuration: return "ZERO_DURATION";
    case ErrorCode::Cycle: return "CYCLE";
    case ErrorCode::BadParams: return "BAD_PARAMS";
    case ErrorCode::BadFormat: return "BAD_FORMAT";
    case ErrorCode::SelfLink: return "SELF_LINK";
    case ErrorCode::MixedTypes: return "MIXED_TYPES";
    case ErrorCode::InfeasibleInput: return "INFEASIBLE_INPUT";
    case ErrorCode::NotNormalized: return "NOT_NORMALIZED";
    case ErrorCode::DuplicateType: return "DUPLICATE_TYPE";
    case ErrorCode::ZeroInput: return "ZERO_INPUT";
    case ErrorCode::UnassignedParent: return "UNASSIGNED_PARENT";
    case ErrorCode::JobExceedsBudget: return "JOB_EXCEEDS_BUDGET";
    case ErrorCode::RevealViolation: return "REVEAL_VIOLATION";
    case ErrorCode::TooLarge: return "TOO_LARGE";
    case ErrorCode::MissingMetadata: return "MISSING_METADATA";
    case ErrorCode::SymbolOutOfRange: return "SYMBOL_OUT_OF_RANGE";
    case ErrorCode::NotSupersequence: return "NOT_SUPERSEQUENCE";
    case ErrorCode::UnsortedMachines: return "UNSORTED_MACHINES";
    case ErrorCode::BadLoads: return "BAD_LOADS";
    case ErrorCode::InvalidSolution: return "INVALID_SOLUTION";
    case ErrorCode::SchedulerViolation: return "SCHEDULER_VIOLATION";
    case ErrorCode::Deadlock: return "DEADLOCK";
  }
  return "UNKNOWN";
}

namespace {

std::int64_t parse_int(std::string_view s, std::string_view whole) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw Error(ErrorCode::BadFormat, "not a rational: '" + std::string(whole) + "'");
  return v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_int(text, text));
  auto num = parse_int(text.substr(0, slash), text);
  auto den = parse_int(text.substr(slash + 1), text);
  if (den == 0) throw Error(ErrorCode::BadFormat, "zero denominator in '" + std::string(text) + "'");
  return Rational(num, den);
}

std::string format_rational(const Rational& r) {
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

bool fits_within(const ResourceVector& a, const ResourceVector& b) {
  for (std::size_t k = 0; k < a.size(); ++k)
    if (a[k] > b[k]) return false;
  return true;
}

void add_into(ResourceVector& acc, const ResourceVector& v) {
  for (std::size_t k = 0; k < v.size(); ++k) acc[k] += v[k];
}

void subtract_from(ResourceVector& acc, const ResourceVector& v) {
  for (std::size_t k = 0; k < v.size(); ++k) acc[k] -= v[k];
}

ResourceVector scaled(const ResourceVector& v, std::int64_t factor) {
  ResourceVector out(v);
  for (auto& x : out) x *= factor;
  return out;
}

}  // namespace presched
