#pragma once

#include "risnoma/types.hpp"

namespace risnoma::conic {

/// Real symmetric embedding [[Re h, -Im h], [Im h, Re h]] of a Hermitian
/// matrix. Preserves PSD-ness and doubles every eigenvalue's multiplicity;
/// Tr(embed(a) embed(b)) = 2 Re Tr(a b).
MatR embed_hermitian(const MatC& h);

/// Inverse of embed_hermitian for matrices with the embedded block structure.
/// For a general symmetric 2n x 2n input this first projects onto that
/// structure by averaging the blocks, which preserves PSD-ness and every
/// trace inner product against embedded coefficients.
MatC unembed_hermitian(const MatR& y);

}  // namespace risnoma::conic
