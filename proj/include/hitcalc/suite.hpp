#pragma once

#include <functional>
#include <string>
#include <vector>

#include "hitcalc/hit_engine.hpp"

namespace hitcalc {

struct SuiteRow {
    std::string id;
    std::string description;
    std::string expected;
    std::string computed;
    bool pass = false;
    bool gating = true;
    double seconds = 0.0;
};

struct SuiteOptions {
    EngineOptions engine;
    ReportCache* cache = nullptr;
    bool stretch = false;
};

/// Runs the reference checks (dimensions, block structure, E/F/C partition, conjecture
/// checks, invariants, vanishing and filter soundness). `on_row` fires as each row finishes.
std::vector<SuiteRow> run_reference_suite(const SuiteOptions& options,
                                          const std::function<void(const SuiteRow&)>& on_row = {});

}  // namespace hitcalc
