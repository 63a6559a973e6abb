#include "partref/engine.hh"

#include <chrono>
#include <map>
#include <sstream>
#include <unordered_map>

#include "partref/errors.hh"
#include "partref/layer.hh"
#include "partref/reference.hh"

namespace partref {

namespace {

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void require(bool cond, const std::string& what) {
    if (!cond) throw InvariantError(what);
}

}  // namespace

std::string RunStats::to_text() const {
    std::ostringstream os;
    os << "states=" << states << "\n"
       << "edges=" << edges << "\n"
       << "initial_blocks=" << initial_blocks << "\n"
       << "final_blocks=" << final_blocks << "\n"
       << "compound_splits=" << compound_splits << "\n"
       << "max_subblock_memberships=" << max_subblock_memberships << "\n"
       << "middle_block_total=" << middle_block_total << "\n"
       << "marked_states=" << marked_states << "\n"
       << "moved_states=" << moved_states << "\n"
       << "smaller_half_violations=" << smaller_half_violations << "\n"
       << "weight_cells=" << weight_cells << "\n"
       << "grouping_calls=" << grouping.calls << "\n"
       << "grouping_items=" << grouping.items << "\n"
       << "grouping_sorted_items=" << grouping.sorted_items << "\n"
       << "grouping_comparisons=" << grouping.comparisons << "\n"
       << "init_seconds=" << init_seconds << "\n"
       << "wall_seconds=" << wall_seconds << "\n";
    return os.str();
}

Engine::Engine(const EncodedCoalgebra& enc, EngineOptions options)
    : enc_(enc), iface_(*enc.iface), options_(options) {}

void Engine::initialize() {
    const auto start = std::chrono::steady_clock::now();
    const std::size_t n = enc_.num_states;
    const std::size_t m = enc_.num_edges();
    to_sub_.assign(n, {});
    last_w_.assign(m, 0);
    deref_.clear();
    deref_.reserve(n);
    cell_edges_.clear();
    cell_edges_.reserve(n);
    memberships_.assign(n, 0);
    split_key_.assign(n, {});

    std::vector<std::string> keys(n);
    for (StateIdx x = 0; x < n; ++x) {
        const auto out = enc_.out_edges(x);
        labels_.clear();
        for (const Edge& e : out) labels_.push_back(e.label);
        const auto cell = static_cast<std::uint32_t>(deref_.size());
        deref_.push_back(iface_.init(enc_.types[x], labels_));
        cell_edges_.push_back(static_cast<std::uint32_t>(out.size()));
        for (EdgeIdx e = enc_.out_begin[x]; e < enc_.out_begin[x + 1]; ++e) last_w_[e] = cell;
        keys[x] = iface_.serialize_type(enc_.types[x]);
    }
    partition_ = RefinablePartition::from_grouping(n, keys);
    tracker_ = CompoundTracker(partition_);
    marks_.assign(partition_.block_capacity(), {});

    stats_ = RunStats{};
    stats_.states = n;
    stats_.edges = m;
    stats_.initial_blocks = partition_.num_blocks();
    stats_.weight_cells = deref_.size();
    stats_.init_seconds = seconds_since(start);
    initialized_ = true;
    if (options_.checks != InvariantChecks::None) check_invariants(options_.checks);
}

bool Engine::step() {
    if (!initialized_) initialize();
    const auto selection = tracker_.select_subblock(partition_);
    if (!selection) return false;
    const BlockId s = selection->subblock;
    if (2 * partition_.size(s) > tracker_.compound_size(selection->compound)) ++stats_.smaller_half_violations;
    tracker_.split_compound(s, partition_);
    ++stats_.compound_splits;
    for (StateIdx y : partition_.members(s)) {
        const std::size_t count = ++memberships_[y];
        if (count > stats_.max_subblock_memberships) stats_.max_subblock_memberships = count;
    }
    split(s);
    if (options_.checks != InvariantChecks::None) check_invariants(options_.checks);
    return true;
}

void Engine::run() {
    const auto start = std::chrono::steady_clock::now();
    if (!initialized_) initialize();
    while (step()) {
    }
    stats_.final_blocks = partition_.num_blocks();
    stats_.weight_cells = deref_.size();
    stats_.wall_seconds = seconds_since(start);
}

void Engine::split(BlockId s) {
    // Collect the predecessors of S, block by block.
    m_.clear();
    const std::vector<StateIdx> subblock(partition_.members(s).begin(), partition_.members(s).end());
    for (StateIdx y : subblock) {
        for (EdgeIdx e : enc_.pred_edges(y)) {
            const StateIdx x = enc_.edges[e].source;
            const BlockId b = partition_.block_of(x);
            auto& mark = marks_[b];
            if (mark.empty()) m_.emplace_back(b, iface_.update({}, deref_[last_w_[e]]).split_key);
            if (to_sub_[x].empty()) mark.emplace_back(x, last_w_[e]);
            to_sub_[x].push_back(e);
        }
    }

    // Split every collected block by the keys of its marked states.
    for (auto& [b, v_empty] : m_) {
        auto& mark = marks_[b];
        for (const auto& [x, p_c] : mark) {
            auto& edges = to_sub_[x];
            labels_.clear();
            for (EdgeIdx e : edges) labels_.push_back(enc_.edges[e].label);
            UpdateResult res = iface_.update(labels_, deref_[p_c]);
            const auto moved_edges = static_cast<std::uint32_t>(edges.size());
            cell_edges_[p_c] -= moved_edges;
            const bool rest_empty = cell_edges_[p_c] == 0;
            std::uint32_t p_s = p_c;
            if (rest_empty) {
                // No edge points to w(C \ S) any more: the cell now holds w(S).
                deref_[p_s] = std::move(res.to_subblock);
            } else {
                deref_[p_c] = std::move(res.to_rest);
                p_s = static_cast<std::uint32_t>(deref_.size());
                deref_.push_back(std::move(res.to_subblock));
                cell_edges_.push_back(0);
            }
            cell_edges_[p_s] = moved_edges;
            for (EdgeIdx e : edges) last_w_[e] = p_s;
            edges.clear();
            ++stats_.marked_states;
            if (res.split_key != v_empty) {
                partition_.mark(x);
                ++stats_.moved_states;
                if (!rest_empty) ++stats_.middle_block_total;
                split_key_[x] = std::move(res.split_key);
            }
        }
        mark.clear();
        if (partition_.marked_count(b) == 0) continue;
        const auto fresh = partition_.split_marked_by_key(
            b, [this](StateIdx x) -> std::string_view { return split_key_[x]; }, &stats_.grouping);
        tracker_.register_new_blocks(b, fresh, partition_);
        if (marks_.size() < partition_.block_capacity()) marks_.resize(partition_.block_capacity());
    }
}

std::vector<std::uint32_t> Engine::block_assignment() const {
    std::vector<std::uint32_t> out(enc_.num_states);
    for (StateIdx x = 0; x < enc_.num_states; ++x) out[x] = partition_.block_of(x);
    return out;
}

void Engine::check_invariants(InvariantChecks level) const {
    if (level == InvariantChecks::None) return;
    partition_.check_consistency();
    tracker_.check_consistency(partition_);
    const std::size_t n = enc_.num_states;

    // No edge waits in toSub.
    for (StateIdx x = 0; x < n; ++x) require(to_sub_[x].empty(), "toSub of a state is not empty");
    for (const auto& mark : marks_) require(mark.empty(), "a block keeps marks between splits");

    // lastW(e1) = lastW(e2) iff same source and same compound of the target.
    std::unordered_map<std::uint64_t, std::uint32_t> cell_of;
    std::unordered_map<std::uint32_t, std::uint64_t> owner_of;
    for (EdgeIdx e = 0; e < enc_.num_edges(); ++e) {
        const Edge& edge = enc_.edges[e];
        const CompoundId c = tracker_.compound_of(partition_.block_of(edge.target));
        const std::uint64_t key = (static_cast<std::uint64_t>(edge.source) << 32) | c;
        auto [it, fresh] = cell_of.emplace(key, last_w_[e]);
        require(it->second == last_w_[e], "edges of one source into one compound use different weight cells");
        auto [jt, fresh_owner] = owner_of.emplace(last_w_[e], key);
        require(jt->second == key, "a weight cell is shared across sources or compounds");
    }
    if (level != InvariantChecks::Full) return;

    // deref(lastW(e)) = w(C)(xi(x)) for the compound C of the target.
    std::vector<char> in_c(n);
    for (EdgeIdx e = 0; e < enc_.num_edges(); ++e) {
        const Edge& edge = enc_.edges[e];
        const StateIdx x = edge.source;
        const CompoundId c = tracker_.compound_of(partition_.block_of(edge.target));
        for (StateIdx y = 0; y < n; ++y) in_c[y] = tracker_.compound_of(partition_.block_of(y)) == c;
        const SortIdx sort = enc_.sort_of[x];
        std::vector<LayerEdge> layer_edges;
        for (const Edge& out : enc_.out_edges(x)) layer_edges.push_back({out.label, out.target});
        const LayerKind kind = enc_.sort_kinds[sort];
        const LayerValue value = decode_layer(kind, enc_.types[x], layer_edges);
        const Weight expected = reference::weight(kind, sort, value, in_c);
        require(deref_[last_w_[e]] == expected,
                "weight cell holds " + to_string(deref_[last_w_[e]]) + " instead of " + to_string(expected));
    }

    // X/P is stable w.r.t. X/Q.
    std::vector<std::string> signature(n);
    std::vector<SignatureEdge> sig_edges;
    for (StateIdx x = 0; x < n; ++x) {
        sig_edges.clear();
        for (const Edge& e : enc_.out_edges(x))
            sig_edges.push_back({e.label, tracker_.compound_of(partition_.block_of(e.target))});
        signature[x] = iface_.oracle_signature(enc_.types[x], sig_edges);
    }
    for (BlockId b : partition_.live_blocks()) {
        const auto members = partition_.members(b);
        for (StateIdx x : members)
            require(signature[x] == signature[members[0]], "a block of X/P is not stable w.r.t. X/Q");
    }
}

std::vector<std::uint32_t> minimize(const EncodedCoalgebra& enc, RunStats* stats, EngineOptions options) {
    Engine engine(enc, options);
    engine.run();
    if (stats) *stats = engine.stats();
    return engine.block_assignment();
}

}  // namespace partref
