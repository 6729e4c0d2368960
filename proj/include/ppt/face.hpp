#pragma once

#include "ppt/basis.hpp"
#include "ppt/state.hpp"
#include "ppt/types.hpp"

namespace ppt {

/// Coordinate representations of the orthogonal projections onto the face
/// subspaces at rho: P for the face of the PSD cone ({sigma >= 0 : Im sigma
/// inside Im rho}, the map H -> Pi H Pi), and Q-bar for the face of the
/// partially transposed cone (H -> (Pi' H^P Pi')^P with Pi' onto Im rho^P).
/// Both are real symmetric N^2 x N^2 with ranks m^2 and n^2.
struct FaceProjectors {
  MatrixXd p;
  MatrixXd q_bar;
  RankPair ranks;  // (m, n) of the analyzed state
};

struct FaceReport {
  int dim_f = 0;          // eigenvalues of P Qbar P within 1e-6 of 1
  int lower_bound = 0;    // m^2 + n^2 - N^2
  bool is_extremal = false;
  double eigen_gap = 0.0;  // smallest counted eigenvalue minus largest uncounted
  bool gap_reliable = true;  // false when eigen_gap < 1e-4
};

/// Builds the two face projectors column by column in basis coordinates.
/// Throws std::runtime_error when the rank of rho or rho^P is ambiguous at
/// the threshold (an eigenvalue within a factor 10 of tau_rank * lambda_max).
FaceProjectors face_projectors(const PptState& state, const HermitianBasis& basis);

/// dim F = multiplicity of eigenvalue 1 of P Qbar P; a state is extremal in
/// the PPT cone exactly when its face is one-dimensional.
FaceReport face_dimension(const FaceProjectors& proj);

/// Necessary condition m^2 + n^2 <= N^2 + 1 for an extremal PPT state.
bool extremity_rank_bound(const BipartiteDims& dims, int m, int n);

}  // namespace ppt
