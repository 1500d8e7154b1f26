#pragma once

#include "kapranov/linalg.hpp"
#include "kapranov/module.hpp"

#include <map>
#include <optional>

namespace kap {

// The k-vector space of total degree n in a dg module.
struct Slice {
  std::vector<ModKey> keys;
  std::map<ModKey, size_t> index;
};

Slice degree_slice(const DgModule& M, int n);
Vector to_vector(const Slice& s, const ModuleElement& v);
ModuleElement from_vector(const Slice& s, const Vector& x);

// Matrix of the differential from degree n to degree n+1.
Matrix differential_matrix(const DgModule& M, int n);

std::vector<ModuleElement> cohomology_basis(const DgModule& M, int n);

struct CohomologyDims {
  size_t kernel = 0;
  size_t image = 0;
};
CohomologyDims cohomology_dims(const DgModule& M, int n);

bool is_closed(const DgModule& M, const ModuleElement& z);

// A primitive of z, if one exists. Throws on non-closed or inhomogeneous z.
std::optional<ModuleElement> is_coboundary(const DgModule& M, const ModuleElement& z);

bool classes_equal(const DgModule& M, const ModuleElement& z1, const ModuleElement& z2);

}  // namespace kap
