#include "nlimodal/kripke.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include <json.hpp>

namespace nlimodal {

bool KripkeModel::true_at(const std::string& atom, int world) const {
    auto it = valuation.find(atom);
    if (it == valuation.end()) return false;
    return std::binary_search(it->second.begin(), it->second.end(), world);
}

namespace {

bool eval_rec(const KripkeModel& m, const std::vector<std::vector<int>>& succ, int w,
              const Formula& f) {
    switch (f.kind()) {
        case Kind::Atom: {
            auto it = m.valuation.find(f.name());
            if (it == m.valuation.end())
                throw std::invalid_argument("unknown atom: " + f.name());
            return std::binary_search(it->second.begin(), it->second.end(), w);
        }
        case Kind::Top: return true;
        case Kind::Bottom: return false;
        case Kind::Not: return !eval_rec(m, succ, w, f.left());
        case Kind::And: return eval_rec(m, succ, w, f.left()) && eval_rec(m, succ, w, f.right());
        case Kind::Or: return eval_rec(m, succ, w, f.left()) || eval_rec(m, succ, w, f.right());
        case Kind::Implies:
            return !eval_rec(m, succ, w, f.left()) || eval_rec(m, succ, w, f.right());
        case Kind::Iff:
            return eval_rec(m, succ, w, f.left()) == eval_rec(m, succ, w, f.right());
        case Kind::Box:
            for (int v : succ[w])
                if (!eval_rec(m, succ, v, f.left())) return false;
            return true;
        case Kind::Diamond:
            for (int v : succ[w])
                if (eval_rec(m, succ, v, f.left())) return true;
            return false;
    }
    throw std::logic_error("unreachable");
}

std::vector<std::vector<int>> successors(const KripkeModel& m) {
    std::vector<std::vector<int>> succ(m.num_worlds);
    for (auto [from, to] : m.accessibility) {
        if (from < 0 || from >= m.num_worlds || to < 0 || to >= m.num_worlds)
            throw std::out_of_range("accessibility pair out of range");
        succ[from].push_back(to);
    }
    return succ;
}

}  // namespace

bool evaluate(const KripkeModel& m, int w, const Formula& f) {
    if (w < 0 || w >= m.num_worlds) throw std::out_of_range("invalid world id");
    return eval_rec(m, successors(m), w, f);
}

std::string to_json(const KripkeModel& m) {
    nlohmann::ordered_json j;
    j["worlds"] = m.num_worlds;
    j["accessibility"] = nlohmann::ordered_json::array();
    for (auto [from, to] : m.accessibility) j["accessibility"].push_back({from, to});
    j["valuation"] = nlohmann::ordered_json::object();
    for (const auto& [atom, worlds] : m.valuation) j["valuation"][atom] = worlds;
    j["designated"] = m.designated;
    return j.dump();
}

KripkeModel model_from_json(const std::string& json_text) {
    auto j = nlohmann::json::parse(json_text);
    KripkeModel m;
    m.num_worlds = j.at("worlds").get<int>();
    for (const auto& pair : j.at("accessibility"))
        m.accessibility.emplace_back(pair.at(0).get<int>(), pair.at(1).get<int>());
    for (const auto& [atom, worlds] : j.at("valuation").items()) {
        std::vector<int> ids = worlds.get<std::vector<int>>();
        std::sort(ids.begin(), ids.end());
        m.valuation[atom] = std::move(ids);
    }
    m.designated = j.at("designated").get<int>();
    return m;
}

// ── Tree-model bound ────────────────────────────────────────────────────────

namespace {

// Collects the distinct ◇- and □-subformulas of an NNF formula that sit at
// modal level 0 (not under any modal operator).
void top_modals(const Formula& f, std::vector<Formula>& diamonds, std::vector<Formula>& boxes) {
    switch (f.kind()) {
        case Kind::Diamond:
            if (std::find(diamonds.begin(), diamonds.end(), f) == diamonds.end())
                diamonds.push_back(f);
            return;
        case Kind::Box:
            if (std::find(boxes.begin(), boxes.end(), f) == boxes.end()) boxes.push_back(f);
            return;
        case Kind::And:
        case Kind::Or:
        case Kind::Implies:
        case Kind::Iff:
            top_modals(f.left(), diamonds, boxes);
            top_modals(f.right(), diamonds, boxes);
            return;
        case Kind::Not:
            top_modals(f.left(), diamonds, boxes);
            return;
        default: return;
    }
}

int bound_rec(const Formula& f, int depth_guard) {
    if (depth_guard <= 0) return 1;
    std::vector<Formula> diamonds, boxes;
    top_modals(f, diamonds, boxes);
    int total = 1;
    for (const Formula& d : diamonds) {
        Formula child = d.left();
        for (const Formula& b : boxes) child = Formula::conjunction(child, b.left());
        total += bound_rec(child, depth_guard - 1);
    }
    return total;
}

}  // namespace

int sufficient_worlds(const Formula& f) {
    Formula n = nnf(f);
    return bound_rec(n, n.modal_depth());
}

// ── Enumeration ─────────────────────────────────────────────────────────────

namespace {

// Bitmask evaluation over ≤ 32 worlds: returns the set of worlds where f
// holds, given per-atom truth masks and per-world child masks.
std::uint32_t mask_eval(const Formula& f, const std::map<std::string, std::uint32_t>& atom_masks,
                        const std::vector<std::uint32_t>& child_mask, std::uint32_t full) {
    switch (f.kind()) {
        case Kind::Atom: return atom_masks.at(f.name());
        case Kind::Top: return full;
        case Kind::Bottom: return 0;
        case Kind::Not: return full & ~mask_eval(f.left(), atom_masks, child_mask, full);
        case Kind::And:
            return mask_eval(f.left(), atom_masks, child_mask, full) &
                   mask_eval(f.right(), atom_masks, child_mask, full);
        case Kind::Or:
            return mask_eval(f.left(), atom_masks, child_mask, full) |
                   mask_eval(f.right(), atom_masks, child_mask, full);
        case Kind::Implies:
            return (full & ~mask_eval(f.left(), atom_masks, child_mask, full)) |
                   mask_eval(f.right(), atom_masks, child_mask, full);
        case Kind::Iff: {
            std::uint32_t l = mask_eval(f.left(), atom_masks, child_mask, full);
            std::uint32_t r = mask_eval(f.right(), atom_masks, child_mask, full);
            return full & ~(l ^ r);
        }
        case Kind::Box: {
            std::uint32_t g = mask_eval(f.left(), atom_masks, child_mask, full);
            std::uint32_t r = 0;
            for (std::size_t w = 0; w < child_mask.size(); ++w)
                if ((child_mask[w] & ~g) == 0) r |= 1u << w;
            return r;
        }
        case Kind::Diamond: {
            std::uint32_t g = mask_eval(f.left(), atom_masks, child_mask, full);
            std::uint32_t r = 0;
            for (std::size_t w = 0; w < child_mask.size(); ++w)
                if (child_mask[w] & g) r |= 1u << w;
            return r;
        }
    }
    throw std::logic_error("unreachable");
}

// Canonical tree frames on n worlds: parent vectors p[1..n-1] with
// p[i] < i, non-decreasing (BFS numbering), and depth capped.  Every rooted
// tree of the given size and depth is isomorphic to one of these.
void enumerate_parent_vectors(int n, int max_depth, std::vector<int>& parents,
                              std::vector<int>& depth,
                              const std::function<bool(const std::vector<int>&)>& visit,
                              bool& stop) {
    if (stop) return;
    int i = static_cast<int>(parents.size()) + 1;
    if (i == n) {
        if (visit(parents)) stop = true;
        return;
    }
    int lo = parents.empty() ? 0 : parents.back();
    for (int p = lo; p < i && !stop; ++p) {
        if (depth[p] + 1 > max_depth) continue;
        parents.push_back(p);
        depth.push_back(depth[p] + 1);
        enumerate_parent_vectors(n, max_depth, parents, depth, visit, stop);
        parents.pop_back();
        depth.pop_back();
    }
}

std::uint64_t count_parent_vectors(int n, int max_depth) {
    std::uint64_t count = 0;
    std::vector<int> parents, depth{0};
    bool stop = false;
    enumerate_parent_vectors(
        n, max_depth, parents, depth,
        [&](const std::vector<int>&) {
            ++count;
            return false;
        },
        stop);
    return count;
}

}  // namespace

std::uint64_t enumeration_cost(const Formula& f, int max_worlds) {
    std::size_t k = atoms(f).size();
    int d = f.modal_depth();
    std::uint64_t total = 0;
    for (int n = 1; n <= max_worlds; ++n) {
        if (static_cast<std::uint64_t>(k) * n >= 63) return UINT64_MAX;
        std::uint64_t vals = 1ULL << (k * n);
        std::uint64_t trees = count_parent_vectors(n, d);
        if (trees != 0 && vals > UINT64_MAX / trees) return UINT64_MAX;
        std::uint64_t step = trees * vals;
        if (total > UINT64_MAX - step) return UINT64_MAX;
        total += step;
    }
    return total;
}

std::optional<KripkeModel> sat_by_enumeration(const Formula& f, int max_worlds,
                                              const EnumerationOptions& opts) {
    if (max_worlds < 1) throw std::invalid_argument("max_worlds must be >= 1");
    std::vector<std::string> atom_names = atoms(f);
    std::size_t k = atom_names.size();
    int max_depth = f.modal_depth();
    std::uint64_t checks = 0;

    std::optional<KripkeModel> found;
    for (int n = 1; n <= max_worlds && !found; ++n) {
        if (static_cast<std::uint64_t>(k) * n > 24)
            throw EnumerationLimitError("enumeration size limit exceeded");
        std::uint64_t num_vals = 1ULL << (k * n);
        std::uint32_t full = n == 32 ? 0xffffffffu : (1u << n) - 1;

        auto try_tree = [&](const std::vector<int>& parents) {
            std::vector<std::uint32_t> child_mask(n, 0);
            for (int i = 1; i < n; ++i) child_mask[parents[i - 1]] |= 1u << i;
            std::map<std::string, std::uint32_t> atom_masks;
            for (const auto& a : atom_names) atom_masks[a] = 0;
            for (std::uint64_t v = 0; v < num_vals; ++v) {
                if (++checks > opts.max_checks)
                    throw EnumerationLimitError("enumeration size limit exceeded");
                std::size_t bit = 0;
                for (const auto& a : atom_names) {
                    atom_masks[a] = static_cast<std::uint32_t>((v >> bit) & (num_vals - 1) &
                                                               ((1ULL << n) - 1));
                    bit += n;
                }
                if (mask_eval(f, atom_masks, child_mask, full) & 1u) {
                    KripkeModel m;
                    m.num_worlds = n;
                    for (int i = 1; i < n; ++i) m.accessibility.emplace_back(parents[i - 1], i);
                    for (const auto& a : atom_names) {
                        std::vector<int> worlds;
                        for (int w = 0; w < n; ++w)
                            if (atom_masks[a] & (1u << w)) worlds.push_back(w);
                        m.valuation[a] = std::move(worlds);
                    }
                    m.designated = 0;
                    found = std::move(m);
                    return true;
                }
            }
            return false;
        };

        std::vector<int> parents, depth{0};
        bool stop = false;
        enumerate_parent_vectors(n, max_depth, parents, depth, try_tree, stop);
    }
    return found;
}

}  // namespace nlimodal
