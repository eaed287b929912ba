#pragma once

#include <cstddef>
#include <variant>
#include <vector>

namespace anosov {

/// Flow factor Ψ_t of a cocycle word.
struct FlowSeg {
    double duration = 0.0;
};

/// Gluing factor Φ_p at the entry point with coordinate r = |y| on the twisted annulus.
struct GlueAt {
    double r = 0.0;
};

using Factor = std::variant<FlowSeg, GlueAt>;

/// Where a word came from: a constrained sampler or an orbit traced through V.
enum class WordSource { Synthetic, Geometric };

/// Ordered factors of the derivative cocycle. The first factor acts first, so the
/// word [Ψ_{t1}, Φ_{p1}, Ψ_{t2}] represents Ψ_{t2} ∘ Φ_{p1} ∘ Ψ_{t1}.
struct CocycleWord {
    std::vector<Factor> factors;
    WordSource source = WordSource::Synthetic;

    double total_time() const;
    std::size_t glue_count() const;

    /// True when factors alternate and the word starts and ends with a flow segment.
    bool alternating() const;

    /// Durations of flow segments that sit strictly between two gluing factors.
    std::vector<double> interior_durations() const;
};

/// Word for the composition first ∘ second: `second` acts before `first`.
CocycleWord compose(const CocycleWord& first, const CocycleWord& second);

}  // namespace anosov
