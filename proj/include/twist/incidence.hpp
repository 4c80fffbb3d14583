#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "twist/audit.hpp"
#include "twist/gmod.hpp"
#include "twist/schemes.hpp"

namespace tw {

// shared data for one split prime; enumerations are computed on first use
class IncidenceContext {
public:
    IncidenceContext(long prime, uint64_t seed, int cutoff, int jobs);

    Specialization sp;
    Fp2 zero, one;
    Presentation<Fp2> A, S;
    GradedAlgebra<Fp2> GA;
    LineTest<Fp2> T;
    std::array<ComponentSpec<Fp2>, 7> specs;
    ECurve C;
    Linearization<Fp2> LA, LS;
    PointTable<Fp2> table;
    int cutoff;
    int jobs;
    uint64_t seed;

    const LineSchemeResult& lines() const;
    const std::vector<SecantLine>& elliptic() const;
    const Pt<Fp2>& point(int idx) const { return table[idx / 4][idx % 4]; }

private:
    mutable std::unique_ptr<LineSchemeResult> lines_;
    mutable std::unique_ptr<std::vector<SecantLine>> elliptic_;
};

// lines of each component through a point (or fat point), over F_{p^2}
struct LinesThrough {
    std::array<std::vector<Plk<Fp2>>, 7> lines;  // normalized, distinct
    std::array<DimDegree, 7> scheme;             // of the incidence conditions on the parameter space
    std::array<bool, 7> all{};                   // every line of the parameter family qualifies
    size_t distinct() const;
    size_t count(int c) const { return lines[c].size(); }
};

// lines W with W(p) = 0: W ranges over the planes of the 3-space p-perp
LinesThrough lines_through_point(const IncidenceContext& X, const Pt<Fp2>& p);

// lines W with f_p(W) v = 0 for some v in k^2: W = W_v ranges over v in P^1
LinesThrough lines_through_fat_point(const IncidenceContext& X, const Pt<Fp2>& p);

// the twenty points against the seven families; rows in table order
struct PointIncidence {
    std::array<std::array<size_t, 7>, 20> counts{};
    std::array<size_t, 20> total{};
    std::array<LinesThrough, 20> through;
};

PointIncidence point_incidence(const IncidenceContext& X);

AuditReport conic_point_incidence(const IncidenceContext& X, const PointIncidence& I);
AuditReport elliptic_point_incidence(const IncidenceContext& X, const PointIncidence& I);

// sampled fat points, always including tau' + eps_j and one E[2] translate of each
struct FatSample {
    Pt<Fp2> p;
    int distinguished = -1;  // j when p lies in tau' + eps_j + E[2]
    LinesThrough through;
};

std::vector<FatSample> fat_samples(const IncidenceContext& X, size_t generic);
AuditReport fat_incidence(const IncidenceContext& X, const std::vector<FatSample>& F);

// C_i and E_j from their equations against the closed-form intersection points
AuditReport intersection_table_audit(const IncidenceContext& X);

// the quadrics Q_j: rulings, the points on them and the unique C_j line
template <class E>
AuditReport quadric_ruling_identities(const Params<E>& P, const E& zero, const E& one);
AuditReport quadric_audit(const IncidenceContext& X, const PointIncidence& I);

// counts after applying gamma_1 to the points and to the enumerated lines
AuditReport gamma_invariance_audit(const IncidenceContext& X, const PointIncidence& I);

// hom0(L, M_P) != 0 exactly when P lies on L, for every enumerated line and each of the twenty points
AuditReport hom_membership_audit(const IncidenceContext& X);

// kernels of surjections from lines onto point and fat point modules
AuditReport exact_sequence_audit(const IncidenceContext& X, const PointIncidence& I, const std::vector<FatSample>& F,
                                 size_t min_pairs = 12);

Json incidence_json(const IncidenceContext& X, const PointIncidence& I, const std::vector<FatSample>& F);
std::string incidence_markdown(const IncidenceContext& X, const PointIncidence& I, const std::vector<FatSample>& F);

} // namespace tw
