#pragma once

// Concrete finite buildings used as fixtures: Coxeter complexes, generalized
// digons, flag complexes of PG(2,q) and PG(3,q), the symplectic quadrangle
// W(q) and direct products.  Chambers of the incidence geometries are flags,
// ordered lexicographically by the canonical (reduced row echelon) forms of
// their subspaces, so generated buildings are byte-stable.

#include <memory>
#include <string>

#include "cotwin/chambersys.hpp"

namespace cotwin {

using BuildingPtr = std::shared_ptr<const Building>;

BuildingPtr gen_thin(const CoxeterMatrix& matrix, std::string name = "thin");
/// Generators "s" (varying the first coordinate, panels of size a) and "t".
BuildingPtr gen_digon(int a, int b);
/// Generators "p" (change the point) and "l" (change the line).
BuildingPtr gen_pg2(int q);
/// Generators "p", "l" and "h" (change the plane).
BuildingPtr gen_pg3(int q);
/// Point-line flags of the symplectic quadrangle; type B2 with generators
/// "p" and "l".
BuildingPtr gen_sp4(int q);
/// Chamber (x1, x2) gets id x1 * |b2| + x2.  Throws NameClash.
BuildingPtr product(const Building& b1, const Building& b2);

/// Sum over W of q^l(w).
std::size_t poincare_count(const WeylTable& table, int q);

}  // namespace cotwin
