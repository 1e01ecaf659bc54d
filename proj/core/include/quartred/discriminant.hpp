#pragma once

#include <gmpxx.h>

#include <string>

#include "quartred/padic.hpp"
#include "quartred/poly.hpp"

namespace quartred {

using RationalPoly = MultiPoly<mpq_class>;
using PadicForm = MultiPoly<Padic>;
using FqForm = MultiPoly<Fq>;

// Macaulay resultant of the three partial derivatives, i.e. the discriminant
// of a ternary quartic up to a universal constant supported at 2 and 3.
// Transforms with weight 36: disc(F o M) = det(M)^36 disc(F).
mpq_class discriminant_quartic(const RationalPoly& F);
Padic discriminant_quartic(const PadicForm& F);

// Macaulay resultant of three ternary cubics.
mpq_class macaulay_resultant_cubics(const RationalPoly& f1, const RationalPoly& f2,
                                    const RationalPoly& f3);

// Parse a polynomial in x1, x2, x3 (also x, y, z) with rational coefficients,
// e.g. "x1^3*x2 + x2^3*x3 - 1/2*x3^3*x1".
RationalPoly parse_polynomial(const std::string& text, int nvars = 3);

PadicForm embed(const RationalPoly& F, const FieldContext& K);

std::string format_polynomial(const RationalPoly& F);
std::string format_polynomial(const PadicForm& F, int prec = -1);
std::string format_polynomial(const FqForm& F);

// p-adic valuation of a nonzero rational
int rational_valuation(const mpq_class& q, long p);

}  // namespace quartred
