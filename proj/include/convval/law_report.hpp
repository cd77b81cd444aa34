#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "convval/convex_function.hpp"
#include "convval/growth.hpp"
#include "convval/number.hpp"

namespace convval {

/// Outcome of one identity check. pass == (|left - right| <= tolerance),
/// with tolerance 0 meaning exact equality of exact values.
struct LawReport {
  std::string law;
  std::string digest;
  bool pass = false;
  Number left;
  Number right;
  std::string witness;
  double tolerance = 0.0;
  std::uint64_t seed = 0;
};

LawReport compare_values(std::string law, const Number& left, const Number& right, double tolerance,
                         std::uint64_t seed = 0, std::string digest = {}, std::string witness = {});

/// Report for a boolean check; left/right hold 1/0 for pass/fail.
LawReport check_flag(std::string law, bool ok, std::uint64_t seed = 0, std::string digest = {},
                     std::string witness = {});

/// FNV-1a 64-bit hash as 16 hex digits.
std::string fnv1a_hex(std::string_view text);

/// Canonical text of the epigraph H-rep; equal functions give equal text.
std::string canonical_text(const ClosedPwa& u);
std::string canonical_text(const PiecewisePoly& f);

std::string digest_of(const std::vector<std::string>& parts);

}  // namespace convval
