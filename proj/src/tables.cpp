#include "lgring/tables.hpp"

namespace lgring {

std::string label_text(DimLabel l) {
    switch (l) {
        case DimLabel::zero:
            return "0";
        case DimLabel::scalar:
            return "C";
        case DimLabel::rw0:
            return "R(W)_0";
        case DimLabel::rw0_plus_scalar:
            return "R(W)_0 + C";
    }
    return "?";
}

long CohomologyTable::total() const {
    long t = 0;
    for (const auto& e : entries) t += e.dim;
    return t;
}

long rw0_dim(const JacobianRing& ring) {
    long total = 0;
    for (long d : ring.primitive_dims()) total += d;
    return total;
}

CohomologyTable hypersurface_betti(const JacobianRing& ring) {
    const int n = ring.n();
    const long rw0 = rw0_dim(ring);
    const int middle = n - 2;
    CohomologyTable t;
    t.kind = TableKind::hypersurface_H;
    for (int r = 0; r <= 2 * (n - 2); ++r) {
        TableEntry e;
        e.index = {r};
        if (r == middle) {
            if (middle % 2 == 1) {
                e.dim = rw0;
                e.label = DimLabel::rw0;
            } else {
                e.dim = rw0 + 1;
                e.label = DimLabel::rw0_plus_scalar;
            }
        } else if (r % 2 == 0) {
            e.dim = 1;
            e.label = DimLabel::scalar;
        } else {
            e.dim = 0;
            e.label = DimLabel::zero;
        }
        t.entries.push_back(std::move(e));
    }
    return t;
}

CohomologyTable pv_cohomology_table(const JacobianRing& ring) {
    const int n = ring.n();
    const long rw0 = rw0_dim(ring);
    CohomologyTable t;
    t.kind = TableKind::pv_H;
    for (int r = -(n - 2); r <= n - 2; ++r) {
        TableEntry e;
        e.index = {r};
        bool on_lattice = ((r + n) % 2 == 0);  // r = -n+2+2k
        if (r == 0) {
            if ((n - 2) % 2 == 1) {
                e.dim = rw0;
                e.label = DimLabel::rw0;
            } else {
                e.dim = rw0 + 1;
                e.label = DimLabel::rw0_plus_scalar;
            }
        } else if (on_lattice) {
            e.dim = 1;
            e.label = DimLabel::scalar;
        } else {
            e.dim = 0;
            e.label = DimLabel::zero;
        }
        t.entries.push_back(std::move(e));
    }
    return t;
}

long bott_dim(int n, int s, int d) {
    if (n < 2) throw std::invalid_argument("bott_dim: n >= 2 required");
    if (s == 0 && d >= 0) return monomial_count(n, d);
    if (s == n - 1 && d <= -n) return monomial_count(n, -d - n);
    return 0;
}

CohomologyTable bott_table(int n, int d_range) {
    CohomologyTable t;
    t.kind = TableKind::bott;
    for (int s : {0, n - 1}) {
        for (int d = -d_range; d <= d_range; ++d) {
            TableEntry e;
            e.index = {s, d};
            e.dim = bott_dim(n, s, d);
            e.label = e.dim > 0 ? DimLabel::scalar : DimLabel::zero;
            t.entries.push_back(std::move(e));
        }
    }
    return t;
}

CohomologyTable e2_table(const JacobianRing& ring) {
    const int n = ring.n();
    const long rw0 = rw0_dim(ring);
    CohomologyTable t;
    t.kind = TableKind::e2_page;
    for (int r = 0; r <= n; ++r) {
        for (int s = 0; s <= n; ++s) {
            TableEntry e;
            e.index = {r, s};
            if (r == s && 1 <= r && r <= n - 1) {
                e.dim = 1;
                e.label = DimLabel::scalar;
            } else if (r == n && s == 0) {
                e.dim = rw0;
                e.label = DimLabel::rw0;
            } else {
                e.dim = 0;
                e.label = DimLabel::zero;
            }
            t.entries.push_back(std::move(e));
        }
    }
    return t;
}

}  // namespace lgring
