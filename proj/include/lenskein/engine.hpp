#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lenskein/invariants.hpp"
#include "lenskein/laurent.hpp"
#include "lenskein/lens.hpp"
#include "lenskein/moves.hpp"

namespace lenskein {

// Value of a trivial link: a^(p*sl_T+1) on the coincident-free part, one
// factor (a^-p - a^p)/z per split unknot, and base a^(-p+1) when only
// unknots remain.  Throws EmptyLink on the empty index.
LaurentPoly2 trivial_value(LensParams lens, const TrivialIndex& idx);

// One node of the skein tree.  Branch nodes carry the crossing-change child
// first and the resolution child second; Split nodes factor off one split
// unknot; Memo nodes reference an already-computed canonical diagram.
struct TraceNode {
    enum class Kind { Leaf, Split, Destabilize, Isotopy, Branch, Memo };
    Kind kind = Kind::Leaf;
    std::string diagram;  // canonical one-line form
    std::string note;
    SkeinSign sign = SkeinSign::Positive;
    int column = -1;
    LaurentPoly2 value;
    std::vector<std::unique_ptr<TraceNode>> children;
};

struct EngineOptions {
    std::uint64_t seed = 0;     // shuffles branch-candidate order per diagram
    bool parallel = false;      // evaluate branch children concurrently near the root
    bool record_trace = false;
    int isotopy_budget = 2000;  // states explored per isotopy search
};

struct MemoStats {
    std::size_t entries = 0;
    std::size_t hits = 0;
    std::size_t lookups = 0;
};

struct HomflyResult {
    LaurentPoly2 value;
    std::unique_ptr<TraceNode> trace;
    MemoStats stats;
};

// The HOMFLY invariant of the link presented by d, by memoized skein
// recursion over canonical forms.  Throws PlanSearchFailed or CycleDetected
// when every reduction avenue is exhausted; never loops silently.
HomflyResult homfly(const GridDiagram& d, const EngineOptions& opt = {});

FwmReport fwm_report(const GridDiagram& d, const EngineOptions& opt = {});

// Reusable engine: the memo and orbit caches persist across calls, which is
// what makes census sweeps cheap.  Safe for concurrent compute() calls.
class HomflyEngine {
public:
    explicit HomflyEngine(EngineOptions opt = {});
    ~HomflyEngine();
    HomflyEngine(const HomflyEngine&) = delete;
    HomflyEngine& operator=(const HomflyEngine&) = delete;

    HomflyResult compute(const GridDiagram& d);
    LaurentPoly2 value(const GridDiagram& d) { return compute(d).value; }
    FwmReport fwm(const GridDiagram& d);
    MemoStats stats() const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

struct PlanStep {
    bool row = false;  // row or column commutation
    int index = 0;
    CommutationClass cls = CommutationClass::NonInterleaving;
};

// Commutation sequence driving one destabilization when the bounded search
// finds one; otherwise the sequence leads to a skein branch point whose
// resolution restarts planning.  Throws NoReductionNeeded when every
// component already has grid number one, PlanSearchFailed when stuck.
struct ReductionPlan {
    std::vector<PlanStep> steps;
    std::optional<DestabSite> site;
    std::optional<int> branch_column;
};

ReductionPlan reduction_plan(const GridDiagram& d, int budget = 20000);

// Indented-tree and node/edge text renderings of a skein trace.
std::string render_trace_tree(const TraceNode& root);
std::string render_trace_graph(const TraceNode& root);

}  // namespace lenskein
