#pragma once

#include <string>

#include "fmr/analysis.hpp"

namespace fmr {

/// Machine-readable analysis report.  Schema is versioned and additive-only;
/// identical inputs produce byte-identical output (timing is null unless
/// explicitly requested).
struct ReportOptions {
    bool include_timing = false;
    double timing_ms = 0.0;
    bool theorems = false;  // include the structural-theorem verdicts
};

std::string report_json(const FormalRingPtr& ring, const AnalysisReport& report,
                        const ReportOptions& opts = {});

/// One-screen human summary.
std::string report_human(const FormalRingPtr& ring, const AnalysisReport& report);

}  // namespace fmr
