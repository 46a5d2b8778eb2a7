#pragma once

#include <string_view>
#include <vector>

#include "cat0lab/isometry.hpp"
#include "cat0lab/walk.hpp"

namespace cat0lab {

enum class AuditVerdict { certified_non_elementary, indeterminate, hypotheses_violated };
std::string_view to_string(AuditVerdict verdict);

struct AtomAudit {
    IsometryClass kind;
    bool rank_one = false;
};

inline const std::vector<int> kAuditPowers{2, 4, 8};
/// Shell scores must climb by at least this much from M=2 to M=8.
inline constexpr Real kAuditGrowth = 1;

struct PairAudit {
    std::size_t i = 0;
    std::size_t j = 0;
    std::vector<Real> shell_scores;  // one per kAuditPowers entry
    std::vector<Real> box_scores;
    bool independent = false;
};

struct RankOneAudit {
    std::vector<AtomAudit> atoms;
    std::vector<PairAudit> pairs;  // rank-one atoms only
    AuditVerdict verdict = AuditVerdict::indeterminate;
};

RankOneAudit rankone_audit(const StepDistribution& spec, const Point& x);
RankOneAudit rankone_audit(const StepDistribution& spec);

}  // namespace cat0lab
