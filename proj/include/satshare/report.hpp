#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace satshare {

enum class UserClass { NtnShared, NtnReserved, Tn };
enum class EngineKind { Analytic, Simulated };

inline std::string to_string(UserClass c) {
    switch (c) {
    case UserClass::NtnShared: return "ntn_shared";
    case UserClass::NtnReserved: return "ntn_reserved";
    case UserClass::Tn: return "tn";
    }
    return "?";
}

inline std::string to_string(EngineKind e) {
    return e == EngineKind::Analytic ? "analytic" : "simulated";
}

struct CoveragePoint {
    double threshold = 0.0;   // linear SINR
    double probability = 0.0;
    double half_width = 0.0;  // 95% CI half-width; 0 for analytic points
};

struct CoverageCurve {
    UserClass user_class = UserClass::NtnShared;
    EngineKind source = EngineKind::Analytic;
    std::vector<CoveragePoint> points; // ordered by ascending threshold
    long trials = 0;
    long discarded = 0;
};

struct OperatingPoint {
    double protection_radius = 0.0; // m
    double shared_fraction = 0.0;
};

struct AdrReport {
    double adr_ntn_shared = 0.0;   // bit/s/m^2
    double adr_ntn_reserved = 0.0;
    double adr_tn = 0.0;
    double ws_adr = 0.0;
    bool feasible_ntn_shared = true;
    bool feasible_ntn_reserved = true;
    bool feasible_tn = true;
    OperatingPoint operating_point;

    bool feasible() const {
        return feasible_ntn_shared && feasible_ntn_reserved && feasible_tn;
    }
};

struct EstimatorResult {
    double mean = 0.0;
    double half_width95 = 0.0;
    long trials = 0;
    long discarded = 0;
};

} // namespace satshare
