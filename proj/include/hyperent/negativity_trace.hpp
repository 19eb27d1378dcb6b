#pragma once

#include <string>
#include <vector>

namespace hyperent {

struct TraceProvenance {
    int n{1};
    double F{0.5};
    double alpha{1.0};
    double phase{0.0};
    double B_T{0.0};
    double A_ueV{0.0};
    std::string engine{"sector"};
};

struct NegativityTrace {
    std::vector<double> times;   // ns
    std::vector<double> values;
    TraceProvenance params;
};

}  // namespace hyperent
