#include "dmdseg/evaluation.hpp"

#include <algorithm>
#include <iomanip>
#include <ostream>

namespace dmdseg {

double jaccard(const BinaryMask& a, const BinaryMask& b) {
    if (!same_shape(a, b))
        throw ValidationError("jaccard: dimension mismatch");
    std::int64_t inter = 0, uni = 0;
    for (std::size_t i = 0; i < a.bits.size(); ++i) {
        inter += a.bits[i] & b.bits[i];
        uni += a.bits[i] | b.bits[i];
    }
    if (uni == 0)
        return 1.0; // both empty: identical sets
    return static_cast<double>(inter) / static_cast<double>(uni);
}

GroundTruthSet build_ground_truths(const BinaryMask& e1, const BinaryMask& e2,
                                   const BinaryMask& e3) {
    return GroundTruthSet{mask_and(e2, e3), mask_and(e1, e3), mask_and(e1, e2)};
}

double score_expert(const BinaryMask& e_i, const BinaryMask& g_i) {
    return jaccard(e_i, g_i);
}

DmdScores score_dmd(const BinaryMask& d, const GroundTruthSet& gts) {
    DmdScores s;
    s.d1 = jaccard(d, gts.g1);
    s.d2 = jaccard(d, gts.g2);
    s.d3 = jaccard(d, gts.g3);
    s.mean = (s.d1 + s.d2 + s.d3) / 3.0;
    return s;
}

BinaryMask bounding_box_mask(const BinaryMask& e1, const BinaryMask& e2, const BinaryMask& e3) {
    const BinaryMask u = mask_or(mask_or(e1, e2), e3);
    int rmin = u.height, rmax = -1, cmin = u.width, cmax = -1;
    for (int r = 0; r < u.height; ++r)
        for (int c = 0; c < u.width; ++c)
            if (u.at(r, c)) {
                rmin = std::min(rmin, r);
                rmax = std::max(rmax, r);
                cmin = std::min(cmin, c);
                cmax = std::max(cmax, c);
            }
    if (rmax < 0)
        throw ValidationError("bounding_box_mask: all annotations empty");
    BinaryMask box(u.width, u.height);
    for (int r = rmin; r <= rmax; ++r)
        for (int c = cmin; c <= cmax; ++c)
            box.set(r, c, true);
    return box;
}

double mse(const TimeIntensityCurve& a, const TimeIntensityCurve& b) {
    if (a.values.size() != b.values.size())
        throw ValidationError("mse: curve length mismatch");
    return (a.values - b.values).squaredNorm() / static_cast<double>(a.values.size());
}

EvaluationReport evaluate(const BinaryMask& dmd_mask, const BinaryMask& e1, const BinaryMask& e2,
                          const BinaryMask& e3, const ImageSequence* seq) {
    const GroundTruthSet gts = build_ground_truths(e1, e2, e3);
    const BinaryMask bbox = bounding_box_mask(e1, e2, e3);

    EvaluationReport r;
    r.dmd = score_dmd(dmd_mask, gts);
    r.e1 = score_expert(e1, gts.g1);
    r.e2 = score_expert(e2, gts.g2);
    r.e3 = score_expert(e3, gts.g3);
    r.bbox = (jaccard(bbox, gts.g1) + jaccard(bbox, gts.g2) + jaccard(bbox, gts.g3)) / 3.0;

    if (seq != nullptr) {
        auto curve_of = [&](const BinaryMask& m) {
            return normalize_curve(apply_template(*seq, m));
        };
        const TimeIntensityCurve cg1 = curve_of(gts.g1);
        const TimeIntensityCurve cg2 = curve_of(gts.g2);
        const TimeIntensityCurve cg3 = curve_of(gts.g3);
        const TimeIntensityCurve cd = curve_of(dmd_mask);
        const TimeIntensityCurve cb = curve_of(bbox);
        r.mse_dmd = (mse(cd, cg1) + mse(cd, cg2) + mse(cd, cg3)) / 3.0;
        r.mse_e1 = mse(curve_of(e1), cg1);
        r.mse_e2 = mse(curve_of(e2), cg2);
        r.mse_e3 = mse(curve_of(e3), cg3);
        r.mse_bbox_g1 = mse(cb, cg1);
        r.mse_bbox_g2 = mse(cb, cg2);
        r.mse_bbox_g3 = mse(cb, cg3);
        r.mse_bbox = (*r.mse_bbox_g1 + *r.mse_bbox_g2 + *r.mse_bbox_g3) / 3.0;
    }
    return r;
}

namespace {
void put(std::ostream& out, const std::optional<double>& v) {
    if (v)
        out << *v;
    else
        out << "nan";
}
} // namespace

void write_report_csv(std::ostream& out, const EvaluationReport& r) {
    out << "D1,D2,D3,avgDMD,E1,E2,E3,Bbox,MSE_dmd,MSE_e1,MSE_e2,MSE_e3,MSE_bbox,"
           "MSE_bbox_g1,MSE_bbox_g2,MSE_bbox_g3\n";
    out << std::setprecision(17);
    out << r.dmd.d1 << ',' << r.dmd.d2 << ',' << r.dmd.d3 << ',' << r.dmd.mean << ',' << r.e1
        << ',' << r.e2 << ',' << r.e3 << ',' << r.bbox;
    for (const auto& v : {r.mse_dmd, r.mse_e1, r.mse_e2, r.mse_e3, r.mse_bbox, r.mse_bbox_g1,
                          r.mse_bbox_g2, r.mse_bbox_g3}) {
        out << ',';
        put(out, v);
    }
    out << '\n';
}

void write_report_table(std::ostream& out, const EvaluationReport& r) {
    out << std::fixed << std::setprecision(4);
    out << "Jaccard vs cross-expert ground truths G_i\n";
    out << "  DMD   : G1 " << r.dmd.d1 << "  G2 " << r.dmd.d2 << "  G3 " << r.dmd.d3
        << "  avg " << r.dmd.mean << '\n';
    out << "  E-1   : " << r.e1 << "   E-2   : " << r.e2 << "   E-3   : " << r.e3 << '\n';
    out << "  Bbox  : " << r.bbox << "  (mean over G1..G3)\n";
    if (r.mse_dmd) {
        out << "Curve MSE (min-max normalized curves)\n";
        out << "  avg(DMD) " << *r.mse_dmd << "  E-1 " << *r.mse_e1 << "  E-2 " << *r.mse_e2
            << "  E-3 " << *r.mse_e3 << '\n';
        out << "  Bbox vs G1 " << *r.mse_bbox_g1 << ", vs G2 " << *r.mse_bbox_g2 << ", vs G3 "
            << *r.mse_bbox_g3 << ", mean " << *r.mse_bbox << '\n';
    }
    out.unsetf(std::ios::fixed);
}

} // namespace dmdseg
