#pragma once

#include <initializer_list>
#include <string>

#include "convval/rational.hpp"

namespace testsupport {

inline convval::Rational q(const char* s) { return convval::parse_rational(s); }
inline convval::Rational q(long v) { return convval::Rational(v); }
inline convval::Rational q(int v) { return convval::Rational(v); }

inline convval::Vec vec(std::initializer_list<const char*> xs) {
  convval::Vec v;
  for (auto x : xs) v.push_back(convval::parse_rational(x));
  return v;
}

inline convval::Vec ivec(std::initializer_list<long> xs) {
  convval::Vec v;
  for (auto x : xs) v.push_back(convval::Rational(x));
  return v;
}

}  // namespace testsupport
