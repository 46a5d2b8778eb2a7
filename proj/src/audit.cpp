#include "cat0lab/audit.hpp"

namespace cat0lab {

std::string_view to_string(AuditVerdict verdict) {
    switch (verdict) {
        case AuditVerdict::certified_non_elementary: return "certified-non-elementary";
        case AuditVerdict::indeterminate: return "indeterminate";
        case AuditVerdict::hypotheses_violated: return "hypotheses-violated";
    }
    return "indeterminate";
}

RankOneAudit rankone_audit(const StepDistribution& spec) {
    return rankone_audit(spec, default_basepoint(spec.model));
}

RankOneAudit rankone_audit(const StepDistribution& raw, const Point& x) {
    const StepDistribution spec = validated(raw);
    RankOneAudit audit;
    std::vector<std::size_t> rank_one;
    for (std::size_t i = 0; i < spec.atoms.size(); ++i) {
        AtomAudit a;
        a.kind = classify(spec.atoms[i].g);
        a.rank_one = is_rank_one(spec.atoms[i].g);
        if (a.rank_one) rank_one.push_back(i);
        audit.atoms.push_back(a);
    }
    if (rank_one.empty()) {
        audit.verdict = AuditVerdict::hypotheses_violated;
        return audit;
    }
    bool found = false;
    for (std::size_t p = 0; p < rank_one.size(); ++p) {
        for (std::size_t q = p + 1; q < rank_one.size(); ++q) {
            PairAudit pair;
            pair.i = rank_one[p];
            pair.j = rank_one[q];
            const auto& g1 = spec.atoms[pair.i].g;
            const auto& g2 = spec.atoms[pair.j].g;
            for (int m : kAuditPowers) {
                pair.shell_scores.push_back(independence_shell_score(g1, g2, x, m));
                pair.box_scores.push_back(independence_score(g1, g2, x, m));
            }
            bool increasing = true;
            for (std::size_t k = 1; k < pair.shell_scores.size(); ++k) {
                increasing = increasing && pair.shell_scores[k] > pair.shell_scores[k - 1];
            }
            pair.independent = increasing && pair.shell_scores.back() - pair.shell_scores.front() >= kAuditGrowth;
            found = found || pair.independent;
            audit.pairs.push_back(std::move(pair));
        }
    }
    audit.verdict = found ? AuditVerdict::certified_non_elementary : AuditVerdict::indeterminate;
    return audit;
}

}  // namespace cat0lab
