#include "convval/law_report.hpp"

#include <cstdio>

namespace convval {

LawReport compare_values(std::string law, const Number& left, const Number& right, double tolerance,
                         std::uint64_t seed, std::string digest, std::string witness) {
  LawReport r;
  r.law = std::move(law);
  r.left = left;
  r.right = right;
  r.tolerance = tolerance;
  r.seed = seed;
  r.digest = std::move(digest);
  r.witness = std::move(witness);
  if (tolerance == 0.0 && left.is_exact() && right.is_exact()) r.pass = left.exact() == right.exact();
  else r.pass = abs_difference(left, right) <= tolerance;
  return r;
}

LawReport check_flag(std::string law, bool ok, std::uint64_t seed, std::string digest, std::string witness) {
  return compare_values(std::move(law), Rational(ok ? 1 : 0), Rational(1), 0.0, seed, std::move(digest),
                        std::move(witness));
}

std::string fnv1a_hex(std::string_view text) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string canonical_text(const ClosedPwa& u) {
  std::string out = "n=" + std::to_string(u.dimension()) + ";";
  for (const auto& r : u.epigraph().hrep().rows) {
    for (const auto& a : r.normal) out += to_string(a) + ",";
    out += "<=" + to_string(r.offset) + ";";
  }
  return out;
}

std::string canonical_text(const PiecewisePoly& f) {
  std::string out = "b=";
  for (const auto& b : f.breakpoints()) out += to_string(b) + ",";
  out += ";h=" + to_string(f.head()) + ";";
  for (const auto& p : f.pieces()) out += to_string(p) + ";";
  if (f.tail()) out += "tail=" + to_string(f.tail()->lambda) + ":" + to_string(f.tail()->poly);
  return out;
}

std::string digest_of(const std::vector<std::string>& parts) {
  std::string joined;
  for (const auto& p : parts) joined += p + "|";
  return fnv1a_hex(joined);
}

}  // namespace convval
