#pragma once

// Turns concrete cycle data into integer group classes. For the admitted
// domain shapes each algebra has exactly one nonvanishing K-group, computed
// either from projection ranks (degree zero) or from determinant windings of
// based loops (degree one). The two relative groups of a homomorphism are
// then a kernel and a cokernel of one induced integer matrix, and every
// class computation reduces to rank counting or winding counting against
// the stored presentations.

#include <string>
#include <utility>
#include <vector>

#include "relk/intk.hpp"
#include "relk/maps.hpp"

namespace relk {

// Which integer invariant carries the K-theory of an algebra.
enum class KProfile { rank, winding };

// K0 and K1 presentations of an admitted algebra; RegimeError otherwise.
std::pair<intk::GroupPresentation, intk::GroupPresentation> k_groups_alg(
    const Algebra& a);
KProfile k_profile(const Algebra& a);

enum class GroupModel { kernel_rank, coker_rank, kernel_winding, coker_winding };

// The two relative groups of a homomorphism, with realized generating
// cycles where the construction is available.
struct RelativeGroups {
  Hom hom;
  int grid = 65;
  intk::IMatrix induced;  // induced matrix in the active degree
  GroupModel k0_model = GroupModel::kernel_rank;
  GroupModel k1_model = GroupModel::coker_rank;
  intk::GroupPresentation k0, k1;
  intk::IMatrix k0_basis;  // kernel models only: ambient x generators
  intk::IMatrix k1_basis;
  std::vector<K0Triple> k0_gens;
  std::vector<K1Triple> k1_gens;
  bool k0_realized = false;
  bool k1_realized = false;
};

RelativeGroups relative_groups(const Hom& h, int grid = 65);

// Generator coordinates of a cycle's class in the matching presentation.
// Kernel models solve against the stored basis; cokernel models count
// windings of an attached based loop. ResolveError when the class cannot
// be computed in the given regime.
std::vector<intk::i64> class_of_k0(const K0Triple& t, const RelativeGroups& g);
std::vector<intk::i64> class_of_k1(const K1Triple& t, const RelativeGroups& g);
// Same class, but the connecting path from the identity to the cycle's
// unitary is supplied by the caller instead of built. The certificate is
// verified node by node; CertificateError on any violation. Only the
// block-cokernel degree-1 model consumes certificates.
std::vector<intk::i64> class_of_k1(const K1Triple& t, const RelativeGroups& g,
                                   const std::vector<Element>& certificate);

// Total phase change of the determinant along a node path, in full turns.
// The path must change slowly (every determinant step under a quarter
// turn) and close up to an integer; GridError otherwise.
intk::i64 winding_number(const std::vector<CMatrix>& nodes);
// Per-block windings of a loop over an interval algebra.
std::vector<intk::i64> loop_winding(const Element& u);
// Per-block windings of a closed path of point-algebra values.
std::vector<intk::i64> path_winding(const std::vector<Element>& nodes);

struct SixTermReport {
  std::vector<std::string> nodes;               // six node labels
  std::vector<intk::GroupPresentation> groups;  // presentation per node
  std::vector<intk::GroupMap> maps;             // maps[i]: node i -> node i+1
  std::vector<intk::ExactnessReport> exact;     // exact[i]: at node i+1 mod 6
  std::vector<std::string> log;
  bool ok = false;
};

// The six-term sequence of one homomorphism between rank-profile algebras:
// K1(A) -> K1(B) -> K0(phi) -> K0(A) -> K0(B) -> K1(phi) -> back.
// Every map column is computed by realizing a generator cycle and pushing
// it through the explicit construction.
SixTermReport six_term_hom(const Hom& h, int grid = 65);

// The six-term sequence of a ladder:
// K0(psi) -> K0(phi) -> K0(gamma) -> K1(psi) -> K1(phi) -> K1(gamma) -> back.
// Admitted shapes: both rows finite dimensional with block-subset ideals,
// or an evaluation row over a zero-ideal point row. RegimeError otherwise.
SixTermReport six_term_ladder(const Ladder& l, int grid = 65);

}  // namespace relk
