#pragma once

#include <string>
#include <vector>

#include "csurf/conley.hpp"

namespace csurf {

struct BatchItem {
    std::string name;
    bool ok = false;
    std::string error;      // set when !ok
    std::string error_code; // machine-readable error name
    std::string report_json;
    std::string report_text;
};

/// Classifies blocks independently under OpenMP (jobs <= 0 means all cores).
/// Items come back in input order.
std::vector<BatchItem> classify_batch(const std::vector<IsolatingBlock>& blocks, int jobs);

/// Serial reference kept for testing and benchmarking.
std::vector<BatchItem> classify_batch_serial(const std::vector<IsolatingBlock>& blocks);

} // namespace csurf
