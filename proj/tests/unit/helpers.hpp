#pragma once

#include "presched/core.hpp"

#include <doctest.h>

#include <initializer_list>

namespace presched::test {

inline Rational R(std::int64_t p, std::int64_t q = 1) { return Rational(p, q); }

// single-resource job
inline Job J(JobId id, Time dur, Rational demand) { return Job{id, dur, {demand}}; }

inline Instance single(std::vector<Job> jobs, std::vector<Edge> edges = {}, Rational budget = 1) {
  return Instance({budget}, std::move(jobs), std::move(edges));
}

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no presched::Error thrown");
  return ErrorCode::BadFormat;
}

}  // namespace presched::test
