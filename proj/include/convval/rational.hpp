#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

namespace convval {

using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

using Vec = std::vector<Rational>;
using Mat = std::vector<Vec>;  // row-major
using IVec = std::vector<Integer>;

/// Parses "p", "-p" or "p/q" into canonical form. Throws ParseError on
/// malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

/// Canonical text form: "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& q);

double to_double(const Rational& q);

Integer numerator_of(const Rational& q);
Integer denominator_of(const Rational& q);

Vec zeros(std::size_t n);
Vec unit_vector(std::size_t n, std::size_t i);
Mat identity(std::size_t n);

Rational dot(const Vec& a, const Vec& b);
Vec add(const Vec& a, const Vec& b);
Vec sub(const Vec& a, const Vec& b);
Vec scale(const Vec& a, const Rational& s);
bool is_zero(const Vec& a);
Rational norm_squared(const Vec& a);
Rational norm1(const Vec& a);

Vec mat_vec(const Mat& m, const Vec& x);
Mat mat_mul(const Mat& a, const Mat& b);
Mat transpose(const Mat& m);

/// Reduced row echelon form in place; returns the pivot columns.
std::vector<std::size_t> rref(Mat& m);

std::size_t rank(Mat m);
Rational determinant(Mat m);

/// Inverse of a square matrix, or nullopt when singular.
std::optional<Mat> inverse(const Mat& m);

/// Basis of {x : m x = 0} in reduced row echelon form (empty when trivial).
Mat nullspace(const Mat& m, std::size_t cols);

/// Positive multiple of `v` with coprime integer entries (zero stays zero).
IVec primitive(const Vec& v);
IVec primitive(const IVec& v);
Vec to_rational(const IVec& v);

Integer dot(const IVec& a, const IVec& b);

}  // namespace convval
