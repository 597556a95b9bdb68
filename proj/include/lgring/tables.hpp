// Closed-form dimension tables for the hypersurface cohomology, the
// polyvector-field cohomology, the second spectral-sequence page, and the
// line-bundle cohomology on projective space, together with the labels
// ("scalar", "R(W)_0", "R(W)_0 + C") the pretty printer renders.
#pragma once

#include <string>
#include <vector>

#include "lgring/milnor.hpp"

namespace lgring {

enum class TableKind { hypersurface_H, pv_H, e2_page, bott };

enum class DimLabel { zero, scalar, rw0, rw0_plus_scalar };

std::string label_text(DimLabel l);

struct TableEntry {
    std::vector<int> index;  // (r), (r, s) or (s, d)
    long dim = 0;
    DimLabel label = DimLabel::zero;
};

struct CohomologyTable {
    TableKind kind;
    std::vector<TableEntry> entries;

    long total() const;
};

// dim R(W)_0 = sum of the primitive dims.
long rw0_dim(const JacobianRing& ring);

// H^r of the hypersurface for r = 0..2(n-2): scalar off the middle row,
// R(W)_0 (n odd ambient parity) or R(W)_0 + C (even) at r = n-2.
CohomologyTable hypersurface_betti(const JacobianRing& ring);

// H^r of the twisted polyvector complex for r = -(n-2)..n-2.
CohomologyTable pv_cohomology_table(const JacobianRing& ring);

// dim H^s(P^{n-1}, O(d)): C(d+n-1, n-1) for s = 0, d >= 0;
// C(-d-1, n-1) for s = n-1, d <= -n; otherwise 0.
long bott_dim(int n, int s, int d);

// Sampled bott table over s in {0, n-1}, d in [-d_range, d_range].
CohomologyTable bott_table(int n, int d_range);

// Second-page table over (r, s): 1 on the diagonal 1 <= r = s <= n-1,
// dim R(W)_0 at (n, 0).
CohomologyTable e2_table(const JacobianRing& ring);

}  // namespace lgring
