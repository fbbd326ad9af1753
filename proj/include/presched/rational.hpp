#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace presched {

using Rational = boost::rational<std::int64_t>;
using ResourceVector = std::vector<Rational>;

// accepts "p/q", "p" or a plain integer
Rational parse_rational(std::string_view text);
std::string format_rational(const Rational& r);

// component-wise a <= b; both must have the same length
bool fits_within(const ResourceVector& a, const ResourceVector& b);
void add_into(ResourceVector& acc, const ResourceVector& v);
void subtract_from(ResourceVector& acc, const ResourceVector& v);
ResourceVector scaled(const ResourceVector& v, std::int64_t factor);

}  // namespace presched
