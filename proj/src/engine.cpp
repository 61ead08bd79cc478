#include "lenskein/engine.hpp"

#include <algorithm>
#include <atomic>
#include <pthread.h>
#include <deque>
#include <future>
#include <random>
#include <shared_mutex>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace lenskein {

LaurentPoly2 trivial_value(LensParams lens, const TrivialIndex& idx) {
    if (!lens_params_ok(lens)) throw Error(Errc::BadLensParams, "trivial_value: bad lens parameters");
    int p = lens.p;
    std::vector<int> m = idx.m;
    m.resize(p, 0);
    int unknots = idx.k_unknots + m[0];
    m[0] = 0;
    long long core = 0;
    for (int v : m) core += v;
    if (core == 0 && unknots == 0) throw Error(Errc::EmptyLink, "trivial_value: empty link");

    LaurentPoly2 value;
    if (core > 0) {
        GridDiagram base = trivial_diagram(lens, m);
        Rational e = Rational(p) * sl_T(base) + Rational(1);
        if (!e.is_integer()) throw Error(Errc::InternalError, "trivial_value: non-integer exponent");
        value = LaurentPoly2::monomial(static_cast<int>(e.num), 0);
    } else {
        value = LaurentPoly2::monomial(-p + 1, 0);
        --unknots;
    }
    LaurentPoly2 factor = LaurentPoly2::monomial(-p, -1) - LaurentPoly2::monomial(p, -1);
    for (int i = 0; i < unknots; ++i) value = value * factor;
    return value;
}

namespace {

struct DeadEnd {};

struct MemoTable {
    std::unordered_map<std::string, LaurentPoly2> map;
    mutable std::shared_mutex mx;
    std::atomic<std::size_t> hits{0}, lookups{0};

    std::optional<LaurentPoly2> get(const std::string& key) {
        ++lookups;
        std::shared_lock lock(mx);
        auto it = map.find(key);
        if (it == map.end()) return std::nullopt;
        ++hits;
        return it->second;
    }
    void put(const std::string& key, const LaurentPoly2& v) {
        std::unique_lock lock(mx);
        map.emplace(key, v);  // first writer wins
    }
    std::size_t size() const {
        std::shared_lock lock(mx);
        return map.size();
    }
};

using BranchStates = std::shared_ptr<const std::vector<GridDiagram>>;

struct Ctx {
    EngineOptions opt;
    MemoTable memo;
    // Orbit states whose non-interleaving closure reaches no split, trivial
    // form, or destabilization; the mapped list holds orbit mates carrying
    // interleaving pairs to branch at.
    std::unordered_map<std::string, BranchStates> orbit_outcome;
    std::shared_mutex orbit_mx;
    std::unordered_map<std::string, std::string> trivial_keys;  // class multiset -> canonical key
    std::unordered_map<std::string, Rational> trivial_tb;       // class multiset -> tb of D(I)
    std::shared_mutex trivial_mx;

    bool orbit_known(const std::string& key, BranchStates* out) {
        std::shared_lock lock(orbit_mx);
        auto it = orbit_outcome.find(key);
        if (it == orbit_outcome.end()) return false;
        if (out) *out = it->second;
        return true;
    }
    void mark_orbit(const std::vector<std::string>& keys, const BranchStates& states) {
        std::unique_lock lock(orbit_mx);
        for (const auto& k : keys) orbit_outcome.emplace(k, states);
    }
};

using Path = std::unordered_set<std::string>;

int pos_mod(long long a, int m) {
    int r = static_cast<int>(a % m);
    return r < 0 ? r + m : r;
}

int count_coincident(const GridDiagram& d) {
    RowTable t = row_table(d);
    int k = 0;
    for (int y = 0; y < d.n(); ++y)
        if (t.o_x[y] == t.x_x[y]) ++k;
    return k;
}

// Chord-crossing count of the column level pairs on the p*n circle; strictly
// drops under a resolution, which keeps the branch recursion well founded.
int chord_crossings(const GridDiagram& d) {
    int n = d.n(), pn = d.width();
    RowTable t = row_table(d);
    std::vector<int> orow(n, -1), xrow(n, -1);
    for (int y = 0; y < n; ++y) {
        orow[t.o_x[y] % n] = y;
        xrow[t.x_x[y] % n] = y;
    }
    std::vector<std::pair<int, int>> chords;
    for (int c = 0; c < n; ++c) {
        Cell o{t.o_x[orow[c]], orow[c]}, x{t.x_x[xrow[c]], xrow[c]};
        if (o == x) continue;
        chords.emplace_back(annulus_level(d, o), annulus_level(d, x));
    }
    auto inside = [&](int u, int lo, int hi) {
        int span = pos_mod(hi - lo, pn), off = pos_mod(u - lo, pn);
        return 0 < off && off < span;
    };
    int total = 0;
    for (std::size_t i = 0; i < chords.size(); ++i)
        for (std::size_t j = i + 1; j < chords.size(); ++j) {
            int in1 = inside(chords[j].first, chords[i].first, chords[i].second) ? 1 : 0;
            int in2 = inside(chords[j].second, chords[i].first, chords[i].second) ? 1 : 0;
            total += in1 + in2 == 1 ? 1 : 0;
        }
    return total;
}

bool has_span_one_column(const GridDiagram& d) {
    int n = d.n(), pn = d.width();
    RowTable t = row_table(d);
    std::vector<int> olevel(n, -1), xlevel(n, -1);
    for (int y = 0; y < n; ++y) {
        olevel[t.o_x[y] % n] = annulus_level(d, Cell{t.o_x[y], y});
        xlevel[t.x_x[y] % n] = annulus_level(d, Cell{t.x_x[y], y});
    }
    for (int c = 0; c < n; ++c) {
        int up = pos_mod(xlevel[c] - olevel[c], pn);
        if (up == 1 || up == pn - 1) return true;
    }
    return false;
}

// Canonical key of D(I) for the class multiset of a coincident-free diagram
// whose components all have grid number one; nullopt otherwise.
std::optional<std::string> trivial_key_for(Ctx& ctx, const GridDiagram& d,
                                           std::vector<int>* m_out) {
    auto idx = is_trivial_form(d);
    if (!idx || idx->k_unknots != 0) return std::nullopt;
    std::ostringstream mk;
    mk << d.lens().p << '.' << d.lens().q;
    for (int v : idx->m) mk << ',' << v;
    std::string mkey = mk.str();
    {
        std::shared_lock lock(ctx.trivial_mx);
        auto it = ctx.trivial_keys.find(mkey);
        if (it != ctx.trivial_keys.end()) {
            if (m_out) *m_out = idx->m;
            return it->second;
        }
    }
    std::string key = canonical_key(trivial_diagram(d.lens(), idx->m));
    {
        std::unique_lock lock(ctx.trivial_mx);
        ctx.trivial_keys.emplace(mkey, key);
    }
    if (m_out) *m_out = idx->m;
    return key;
}

struct SimplifyHit {
    GridDiagram diagram;
    std::vector<PlanStep> steps;
};

// tb of the trivial arrangement in the diagram's homotopy class (split
// unknots included as coincident pairs).  Crossing changes move tb by
// exactly 2, so |tb - target| / 2 bounds the changes still needed; branch
// ordering uses it to steer the crossing-change chains toward the leaves.
Rational target_tb(Ctx& ctx, const GridDiagram& d) {
    ComponentDecomposition dec = components(d);
    std::vector<int> m(d.lens().p, 0);
    for (const Component& comp : dec.components) ++m[comp.klass];
    std::ostringstream mk;
    mk << d.lens().p << '.' << d.lens().q << 't';
    for (int v : m) mk << ',' << v;
    std::string key = mk.str();
    {
        std::shared_lock lock(ctx.trivial_mx);
        auto it = ctx.trivial_tb.find(key);
        if (it != ctx.trivial_tb.end()) return it->second;
    }
    Rational tb = tb_q(trivial_diagram(d.lens(), m));
    std::unique_lock lock(ctx.trivial_mx);
    ctx.trivial_tb.emplace(key, tb);
    return tb;
}

bool has_interleaving_pair(const GridDiagram& d) {
    for (int c = 0; c < d.n(); ++c)
        if (classify_column_commutation(d, c) == CommutationClass::Interleaving) return true;
    return false;
}

constexpr int kMaxBranchStates = 64;

// Best-first walk of the isotopy orbit (non-interleaving commutations only)
// for a state with a split unknot, an exact trivial form, or a
// destabilization site.  When none is reachable the walk instead collects
// orbit mates carrying interleaving pairs, so the caller can branch at any of
// them; the skein-crossing structure is not constant across an orbit.
// Fruitless orbits are cached and skipped on later visits.
std::optional<SimplifyHit> isotopy_search(Ctx& ctx, const GridDiagram& start,
                                          const std::string& start_key, const Path& path,
                                          int budget, BranchStates* branchables_out) {
    BranchStates cached;
    if (ctx.orbit_known(start_key, &cached)) {
        if (branchables_out) *branchables_out = cached;
        return std::nullopt;
    }

    bool saw_blocked_target = false;
    auto test = [&](const GridDiagram& d, const std::string& key) {
        bool target = false;
        if (count_coincident(d) > 0) {
            target = true;
        } else if (auto tk = trivial_key_for(ctx, d, nullptr); tk && *tk == key) {
            target = true;
        } else if (has_span_one_column(d) && !find_destabilization_sites(d).empty()) {
            target = true;
        }
        if (target && path.count(key)) {
            saw_blocked_target = true;
            return false;
        }
        return target;
    };

    struct Node {
        GridDiagram d;
        int parent;
        PlanStep step;
    };
    std::vector<Node> nodes;
    nodes.push_back({start, -1, {}});
    std::unordered_set<std::string> visited{start_key};
    std::deque<int> queue{0};
    auto branchable = std::make_shared<std::vector<GridDiagram>>();
    if (has_interleaving_pair(start)) branchable->push_back(start);

    while (!queue.empty()) {
        if (budget-- <= 0) break;
        int id = queue.front();
        queue.pop_front();
        GridDiagram d = nodes[id].d;
        int n = d.n();
        for (int pass = 0; pass < 2; ++pass) {
            bool row = pass == 1;
            for (int i = 0; i < n; ++i) {
                CommutationClass cls = row ? classify_row_commutation(d, i)
                                           : classify_column_commutation(d, i);
                if (cls != CommutationClass::NonInterleaving) continue;
                GridDiagram canon = canonical_form(row ? commute_rows(d, i) : commute_columns(d, i));
                std::string key = canonical_key(canon);
                if (!visited.insert(key).second) continue;
                nodes.push_back({canon, id, PlanStep{row, i, cls}});
                int nid = static_cast<int>(nodes.size()) - 1;
                if (test(canon, key)) {
                    std::vector<PlanStep> steps;
                    for (int cur = nid; cur > 0; cur = nodes[cur].parent)
                        steps.push_back(nodes[cur].step);
                    std::reverse(steps.begin(), steps.end());
                    return SimplifyHit{canon, std::move(steps)};
                }
                if (static_cast<int>(branchable->size()) < kMaxBranchStates &&
                    has_interleaving_pair(canon))
                    branchable->push_back(canon);
                queue.push_back(nid);
            }
        }
    }
    BranchStates states = std::move(branchable);
    // A target rejected only for sitting on the active path makes this
    // outcome path-dependent; don't cache it.
    if (!saw_blocked_target) {
        std::vector<std::string> all(visited.begin(), visited.end());
        ctx.mark_orbit(all, states);
    }
    if (branchables_out) *branchables_out = states;
    return std::nullopt;
}

std::unique_ptr<TraceNode> make_node(Ctx& ctx, TraceNode::Kind kind, const GridDiagram& d) {
    if (!ctx.opt.record_trace) return nullptr;
    auto node = std::make_unique<TraceNode>();
    node->kind = kind;
    node->diagram = diagram_brief(d);
    return node;
}

LaurentPoly2 eval(Ctx& ctx, const GridDiagram& canon, const std::string& key, Path& path,
                  int depth, std::unique_ptr<TraceNode>* slot);

LaurentPoly2 eval_child(Ctx& ctx, const GridDiagram& raw, Path& path, int depth,
                        std::unique_ptr<TraceNode>* slot) {
    GridDiagram canon = canonical_form(raw);
    return eval(ctx, canon, canonical_key(canon), path, depth, slot);
}

struct BranchCandidate {
    int column;
    SkeinSign sign;
    GridDiagram commuted;
    std::string commuted_key;
    GridDiagram resolved;
    std::string resolved_key;
    Rational distance;  // |tb(commuted) - tb of the trivial arrangement|
    int resolved_crossings;
};

std::optional<LaurentPoly2> branch(Ctx& ctx, const GridDiagram& canon, const std::string& key,
                                   Path& path, int depth, std::unique_ptr<TraceNode>& node) {
    int n = canon.n();
    Rational tb0 = tb_q(canon);
    Rational goal = target_tb(ctx, canon);
    std::vector<BranchCandidate> cands;
    for (int c = 0; c < n; ++c) {
        if (classify_column_commutation(canon, c) != CommutationClass::Interleaving) continue;
        GridDiagram commuted = canonical_form(commute_columns(canon, c));
        GridDiagram resolved = canonical_form(resolve_skein(canon, c));
        Rational tbc = tb_q(commuted);
        SkeinSign sign;
        if (tb0 - tbc == Rational(2))
            sign = SkeinSign::Positive;
        else if (tb0 - tbc == Rational(-2))
            sign = SkeinSign::Negative;
        else
            throw Error(Errc::InternalError, "branch: tb difference is not +-2");
        cands.push_back(BranchCandidate{c, sign, commuted, canonical_key(commuted), resolved,
                                        canonical_key(resolved), (tbc - goal).abs(),
                                        chord_crossings(resolved)});
    }
    if (cands.empty()) return std::nullopt;
    std::stable_sort(cands.begin(), cands.end(),
                     [](const BranchCandidate& a, const BranchCandidate& b) {
                         if (a.distance != b.distance) return a.distance < b.distance;
                         if (a.resolved_crossings != b.resolved_crossings)
                             return a.resolved_crossings < b.resolved_crossings;
                         return a.column < b.column;
                     });
    if (ctx.opt.seed != 0) {
        // randomized tie breaking: shuffle runs of equally ranked candidates
        std::seed_seq seq{ctx.opt.seed, static_cast<std::uint64_t>(std::hash<std::string>{}(key))};
        std::mt19937_64 rng(seq);
        auto same_rank = [](const BranchCandidate& a, const BranchCandidate& b) {
            return a.distance == b.distance && a.resolved_crossings == b.resolved_crossings;
        };
        std::size_t i = 0;
        while (i < cands.size()) {
            std::size_t j = i + 1;
            while (j < cands.size() && same_rank(cands[i], cands[j])) ++j;
            std::shuffle(cands.begin() + i, cands.begin() + j, rng);
            i = j;
        }
    }

    for (const BranchCandidate& cand : cands) {
        if (path.count(cand.commuted_key) || path.count(cand.resolved_key)) continue;
        SkeinSign sign = cand.sign;
        try {
            std::unique_ptr<TraceNode> commuted_trace, resolved_trace;
            LaurentPoly2 jc, jr;
            bool spawn = ctx.opt.parallel && depth < 2;
            if (spawn) {
                Path path_copy = path;
                auto fut = std::async(std::launch::async, [&, path_copy]() mutable {
                    return eval(ctx, cand.commuted, cand.commuted_key, path_copy, depth + 1,
                                ctx.opt.record_trace ? &commuted_trace : nullptr);
                });
                try {
                    jr = eval(ctx, cand.resolved, cand.resolved_key, path, depth + 1,
                              ctx.opt.record_trace ? &resolved_trace : nullptr);
                } catch (...) {
                    try {
                        fut.get();
                    } catch (...) {
                    }
                    throw;
                }
                jc = fut.get();
            } else {
                jc = eval(ctx, cand.commuted, cand.commuted_key, path, depth + 1,
                          ctx.opt.record_trace ? &commuted_trace : nullptr);
                jr = eval(ctx, cand.resolved, cand.resolved_key, path, depth + 1,
                          ctx.opt.record_trace ? &resolved_trace : nullptr);
            }
            int p = canon.lens().p;
            LaurentPoly2 result;
            if (sign == SkeinSign::Positive) {
                result = jc.mono_mul(2 * p, 0) + jr.mono_mul(p, 1);
            } else {
                result = jc.mono_mul(-2 * p, 0) - jr.mono_mul(-p, 1);
            }
            node = make_node(ctx, TraceNode::Kind::Branch, canon);
            if (node) {
                node->sign = sign;
                node->column = cand.column;
                node->children.push_back(std::move(commuted_trace));
                node->children.push_back(std::move(resolved_trace));
            }
            return result;
        } catch (DeadEnd&) {
            continue;
        }
    }
    return std::nullopt;
}

// Chains beyond this depth are abandoned and re-tried along another branch
// ordering; the distance-steered ordering keeps realistic chains far below it.
constexpr int kMaxDepth = 800;

LaurentPoly2 eval(Ctx& ctx, const GridDiagram& canon, const std::string& key, Path& path,
                  int depth, std::unique_ptr<TraceNode>* slot) {
    if (depth > kMaxDepth) throw DeadEnd{};
    if (auto hit = ctx.memo.get(key)) {
        if (slot && ctx.opt.record_trace) {
            auto node = make_node(ctx, TraceNode::Kind::Memo, canon);
            node->value = *hit;
            *slot = std::move(node);
        }
        return *hit;
    }
    if (path.count(key)) throw DeadEnd{};
    path.insert(key);
    LaurentPoly2 result;
    std::unique_ptr<TraceNode> node;
    try {
        int n = canon.n();
        int coincident = count_coincident(canon);
        if (coincident == n) {
            TrivialIndex idx;
            idx.m.assign(canon.lens().p, 0);
            idx.k_unknots = n;
            result = trivial_value(canon.lens(), idx);
            node = make_node(ctx, TraceNode::Kind::Leaf, canon);
            if (node) node->note = "split unlink of " + std::to_string(n) + " unknot(s)";
        } else if (coincident > 0) {
            GridDiagram rest = remove_coincident_pair(canon, *coincident_row(canon));
            node = make_node(ctx, TraceNode::Kind::Split, canon);
            std::unique_ptr<TraceNode> child;
            LaurentPoly2 inner = eval_child(ctx, rest, path, depth + 1, node ? &child : nullptr);
            int p = canon.lens().p;
            result = inner * (LaurentPoly2::monomial(-p, -1) - LaurentPoly2::monomial(p, -1));
            if (node) {
                node->note = "split unknot factor";
                node->children.push_back(std::move(child));
            }
        } else {
            std::vector<int> m;
            auto tk = trivial_key_for(ctx, canon, &m);
            if (tk && *tk == key) {
                result = trivial_value(canon.lens(), TrivialIndex{m, 0});
                node = make_node(ctx, TraceNode::Kind::Leaf, canon);
                if (node) {
                    std::ostringstream msg;
                    msg << "trivial link, index (";
                    for (std::size_t i = 0; i < m.size(); ++i) msg << (i ? "," : "") << m[i];
                    msg << ")";
                    node->note = msg.str();
                }
            } else {
                auto sites = has_span_one_column(canon) ? find_destabilization_sites(canon)
                                                        : std::vector<DestabSite>{};
                BranchStates branchables;
                if (!sites.empty()) {
                    node = make_node(ctx, TraceNode::Kind::Destabilize, canon);
                    std::unique_ptr<TraceNode> child;
                    result = eval_child(ctx, destabilize(canon, sites.front()), path, depth + 1,
                                        node ? &child : nullptr);
                    if (node) node->children.push_back(std::move(child));
                } else if (auto hit = isotopy_search(ctx, canon, key, path, ctx.opt.isotopy_budget,
                                                     &branchables)) {
                    node = make_node(ctx, TraceNode::Kind::Isotopy, canon);
                    std::unique_ptr<TraceNode> child;
                    result = eval(ctx, hit->diagram, canonical_key(hit->diagram), path, depth + 1,
                                  node ? &child : nullptr);
                    if (node) {
                        std::ostringstream msg;
                        msg << hit->steps.size() << " non-interleaving commutation(s)";
                        node->note = msg.str();
                        node->children.push_back(std::move(child));
                    }
                } else {
                    // Branch at this diagram's own skein crossings, then at
                    // orbit mates whose crossing structure differs.
                    std::optional<LaurentPoly2> branched =
                        branch(ctx, canon, key, path, depth, node);
                    if (!branched && branchables) {
                        for (const GridDiagram& b : *branchables) {
                            std::string bkey = canonical_key(b);
                            if (bkey == key || path.count(bkey)) continue;
                            try {
                                std::unique_ptr<TraceNode> child;
                                node = make_node(ctx, TraceNode::Kind::Isotopy, canon);
                                LaurentPoly2 via =
                                    eval(ctx, b, bkey, path, depth + 1, node ? &child : nullptr);
                                if (node) {
                                    node->note = "rearranged to expose a skein crossing";
                                    node->children.push_back(std::move(child));
                                }
                                branched = via;
                                break;
                            } catch (DeadEnd&) {
                                node.reset();
                                continue;
                            }
                        }
                    }
                    if (!branched) throw DeadEnd{};
                    result = *branched;
                }
            }
        }
    } catch (...) {
        path.erase(key);
        throw;
    }
    path.erase(key);
    ctx.memo.put(key, result);
    if (slot) {
        if (ctx.opt.record_trace && !node) node = make_node(ctx, TraceNode::Kind::Leaf, canon);
        if (node) node->value = result;
        *slot = std::move(node);
    }
    return result;
}

}  // namespace

struct HomflyEngine::Impl {
    Ctx ctx;
};

HomflyEngine::HomflyEngine(EngineOptions opt) : impl_(std::make_unique<Impl>()) {
    impl_->ctx.opt = opt;
}

HomflyEngine::~HomflyEngine() = default;

namespace {

// The backtracking recursion can legitimately run a few hundred frames deep;
// give the root call a roomy stack instead of trusting the caller's.
void run_on_big_stack(const std::function<void()>& fn) {
    pthread_attr_t attr;
    if (pthread_attr_init(&attr) != 0) {
        fn();
        return;
    }
    pthread_attr_setstacksize(&attr, std::size_t{512} << 20);
    struct Call {
        const std::function<void()>* fn;
        std::exception_ptr err;
    } call{&fn, nullptr};
    auto trampoline = [](void* arg) -> void* {
        Call* c = static_cast<Call*>(arg);
        try {
            (*c->fn)();
        } catch (...) {
            c->err = std::current_exception();
        }
        return nullptr;
    };
    pthread_t tid;
    if (pthread_create(&tid, &attr, trampoline, &call) != 0) {
        pthread_attr_destroy(&attr);
        fn();
        return;
    }
    pthread_join(tid, nullptr);
    pthread_attr_destroy(&attr);
    if (call.err) std::rethrow_exception(call.err);
}

}  // namespace

HomflyResult HomflyEngine::compute(const GridDiagram& d) {
    ValidityReport report = validate(d);
    if (!report.ok()) throw Error(Errc::InternalError, "homfly: " + report.message);
    Ctx& ctx = impl_->ctx;
    GridDiagram canon = canonical_form(d);
    std::string key = canonical_key(canon);
    HomflyResult out;
    std::unique_ptr<TraceNode> trace;
    try {
        run_on_big_stack([&] {
            Path path;
            out.value = eval(ctx, canon, key, path, 0, ctx.opt.record_trace ? &trace : nullptr);
        });
    } catch (DeadEnd&) {
        throw Error(Errc::PlanSearchFailed,
                    "homfly: every reduction avenue cycled or was exhausted");
    }
    out.trace = std::move(trace);
    out.stats = stats();
    return out;
}

FwmReport HomflyEngine::fwm(const GridDiagram& d) {
    return make_fwm_report(sl_T(d), value(d).a_min_degree(), d.lens().p);
}

MemoStats HomflyEngine::stats() const {
    MemoStats s;
    s.entries = impl_->ctx.memo.size();
    s.hits = impl_->ctx.memo.hits;
    s.lookups = impl_->ctx.memo.lookups;
    return s;
}

HomflyResult homfly(const GridDiagram& d, const EngineOptions& opt) {
    HomflyEngine engine(opt);
    return engine.compute(d);
}

FwmReport fwm_report(const GridDiagram& d, const EngineOptions& opt) {
    HomflyEngine engine(opt);
    return engine.fwm(d);
}

ReductionPlan reduction_plan(const GridDiagram& d, int budget) {
    ComponentDecomposition dec = components(d);
    bool needs = false;
    for (const Component& c : dec.components)
        if (c.grid_number > 1) needs = true;
    if (!needs)
        throw Error(Errc::NoReductionNeeded, "reduction_plan: every component has grid number one");

    Ctx ctx;
    ctx.opt.isotopy_budget = budget;
    GridDiagram canon = canonical_form(d);
    Path path;
    ReductionPlan plan;
    if (!find_destabilization_sites(canon).empty()) {
        plan.site = find_destabilization_sites(canon).front();
        return plan;
    }
    if (auto hit = isotopy_search(ctx, canon, canonical_key(canon), path, budget, nullptr)) {
        auto sites = find_destabilization_sites(hit->diagram);
        if (!sites.empty()) {
            plan.steps = hit->steps;
            plan.site = sites.front();
            return plan;
        }
        // Hit was a strip or trivial form; the plan still records the moves.
        plan.steps = hit->steps;
        return plan;
    }
    // No destabilization is reachable by isotopy alone; progress must come
    // from a skein branch whose resolution restarts planning.
    for (int c = 0; c < canon.n(); ++c) {
        if (classify_column_commutation(canon, c) == CommutationClass::Interleaving) {
            plan.branch_column = c;
            return plan;
        }
    }
    throw Error(Errc::PlanSearchFailed, "reduction_plan: search space exhausted");
}

namespace {

const char* kind_name(TraceNode::Kind k) {
    switch (k) {
        case TraceNode::Kind::Leaf: return "leaf";
        case TraceNode::Kind::Split: return "split";
        case TraceNode::Kind::Destabilize: return "destabilize";
        case TraceNode::Kind::Isotopy: return "isotopy";
        case TraceNode::Kind::Branch: return "skein";
        case TraceNode::Kind::Memo: return "memo";
    }
    return "?";
}

void render_tree(const TraceNode& node, int indent, std::ostringstream& out) {
    out << std::string(static_cast<std::size_t>(indent) * 2, ' ') << kind_name(node.kind);
    if (node.kind == TraceNode::Kind::Branch)
        out << ' ' << (node.sign == SkeinSign::Positive ? "pos" : "neg") << " at columns ("
            << node.column << ',' << node.column + 1 << ")";
    if (!node.note.empty()) out << " [" << node.note << "]";
    out << " :: " << node.diagram;
    if (node.kind == TraceNode::Kind::Leaf || node.kind == TraceNode::Kind::Memo)
        out << " => " << render(node.value);
    out << '\n';
    for (const auto& child : node.children)
        if (child) render_tree(*child, indent + 1, out);
}

void collect_graph(const TraceNode& node, std::unordered_map<std::string, int>& ids,
                   std::ostringstream& nodes, std::ostringstream& edges) {
    auto id_of = [&](const std::string& diagram, const LaurentPoly2& value,
                     TraceNode::Kind kind) {
        auto it = ids.find(diagram);
        if (it != ids.end()) return it->second;
        int id = static_cast<int>(ids.size());
        ids.emplace(diagram, id);
        nodes << "node " << id << " \"" << diagram << "\"";
        if (kind == TraceNode::Kind::Leaf) nodes << " value \"" << render(value) << "\"";
        nodes << '\n';
        return id;
    };
    int self = id_of(node.diagram, node.value, node.kind);
    const char* labels_branch[2] = {"crossing-change", "resolution"};
    for (std::size_t i = 0; i < node.children.size(); ++i) {
        if (!node.children[i]) continue;
        const TraceNode& child = *node.children[i];
        collect_graph(child, ids, nodes, edges);
        int cid = ids.at(child.diagram);
        std::string label;
        switch (node.kind) {
            case TraceNode::Kind::Branch:
                label = std::string(labels_branch[i < 2 ? i : 1]) + " " +
                        (node.sign == SkeinSign::Positive ? "pos" : "neg");
                break;
            case TraceNode::Kind::Split: label = "split-unknot"; break;
            case TraceNode::Kind::Destabilize: label = "destabilization"; break;
            case TraceNode::Kind::Isotopy: label = "isotopy"; break;
            default: label = "edge"; break;
        }
        edges << "edge " << self << ' ' << cid << " \"" << label << "\"\n";
    }
}

}  // namespace

std::string render_trace_tree(const TraceNode& root) {
    std::ostringstream out;
    render_tree(root, 0, out);
    return out.str();
}

std::string render_trace_graph(const TraceNode& root) {
    std::unordered_map<std::string, int> ids;
    std::ostringstream nodes, edges;
    collect_graph(root, ids, nodes, edges);
    return nodes.str() + edges.str();
}

}  // namespace lenskein
