#include "anosov/word.hpp"

namespace anosov {

double CocycleWord::total_time() const {
    double total = 0.0;
    for (const auto& f : factors) {
        if (const auto* seg = std::get_if<FlowSeg>(&f)) total += seg->duration;
    }
    return total;
}

std::size_t CocycleWord::glue_count() const {
    std::size_t count = 0;
    for (const auto& f : factors) count += std::holds_alternative<GlueAt>(f) ? 1U : 0U;
    return count;
}

bool CocycleWord::alternating() const {
    if (factors.empty()) return false;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        const bool flow = std::holds_alternative<FlowSeg>(factors[i]);
        if (flow != (i % 2 == 0)) return false;
    }
    return std::holds_alternative<FlowSeg>(factors.back());
}

std::vector<double> CocycleWord::interior_durations() const {
    std::vector<double> out;
    for (std::size_t i = 1; i + 1 < factors.size(); ++i) {
        const auto* seg = std::get_if<FlowSeg>(&factors[i]);
        if (seg && std::holds_alternative<GlueAt>(factors[i - 1]) &&
            std::holds_alternative<GlueAt>(factors[i + 1])) {
            out.push_back(seg->duration);
        }
    }
    return out;
}

CocycleWord compose(const CocycleWord& first, const CocycleWord& second) {
    CocycleWord out;
    out.factors = second.factors;
    out.factors.insert(out.factors.end(), first.factors.begin(), first.factors.end());
    out.source = (first.source == WordSource::Geometric && second.source == WordSource::Geometric)
                     ? WordSource::Geometric
                     : WordSource::Synthetic;
    return out;
}

}  // namespace anosov
