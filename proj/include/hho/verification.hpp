// Property-check suites over the discrete operators: reconstruction
// identities, stabilization kernel/equivalence, polynomial patch tests and
// discrete orthogonality. Shared by the command line and the test binaries.

#ifndef HHO_VERIFICATION_HPP
#define HHO_VERIFICATION_HPP

#include "hho/afem.hpp"

namespace hho {

struct CheckResult {
  std::string name;
  double value = 0.0;  ///< measured quantity (a residual or a ratio)
  double bound = 0.0;  ///< required bound
  bool pass = false;
  std::string note;
};

/// random polynomial displacement of the given total degree (fixed seed)
VecPoly2 random_polynomial(int degree, unsigned seed);

/// Project a conforming piecewise polynomial (given per element) into the HHO
/// space; traces are taken from t_plus, which is well defined by continuity.
HhoFunction interpolate_polyfield(const Triangulation& mesh, const MeshBases& bases,
                                  std::shared_ptr<const DofMap> dofmap, const PiecewisePolyField& v);

/// continuous piecewise P_degree field with random nodal values, zero on the
/// Dirichlet boundary
PiecewisePolyField random_conforming_field(const Triangulation& mesh, const MeshBases& bases, int degree,
                                           unsigned seed);

/// reconstruction identities: commuting diagram, variational residual and
/// moment conditions, strain best-approximation orthogonality
std::vector<CheckResult> verify_operators(const std::vector<int>& ks);

/// stabilization kernel on conforming functions (all variants) and the
/// classic/alternative equivalence band across uniform refinements
std::vector<CheckResult> verify_stabilization(const std::vector<int>& ks);

/// polynomial patch tests for classic and hdg variants
std::vector<CheckResult> verify_patch(const std::vector<int>& ks);

/// discrete Galerkin orthogonality against conforming P1 test fields and the
/// pure-Dirichlet mean-trace identity
std::vector<CheckResult> verify_orthogonality();

bool all_pass(const std::vector<CheckResult>& results);
void print_results(const std::vector<CheckResult>& results, std::ostream& out);

}  // namespace hho

#endif
