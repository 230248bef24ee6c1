// ============================================================================
// kripke.hpp — finite Kripke structures, satisfaction, and a brute-force
// bounded model enumerator
// ============================================================================
//
// The enumerator is deliberately naive: it walks canonical tree-shaped frames
// in a fixed order and tries every valuation, so it can serve as an
// independent oracle for the tableau prover.  Completeness rests on the
// tree-model property of K: a formula of modal depth d is satisfiable iff it
// is satisfiable at the root of a tree of depth ≤ d whose branching at each
// node is bounded by that node's count of ◇-type subformulas.
// sufficient_worlds() computes that bound for a given formula.
// ============================================================================

#ifndef NLIMODAL_KRIPKE_HPP
#define NLIMODAL_KRIPKE_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "nlimodal/formula.hpp"

namespace nlimodal {

struct KripkeModel {
    int num_worlds = 1;                                   // world ids are 0..num_worlds-1
    std::vector<std::pair<int, int>> accessibility;       // ordered (from, to) pairs
    std::map<std::string, std::vector<int>> valuation;    // atom -> worlds where true
    int designated = 0;

    bool true_at(const std::string& atom, int world) const;
};

// Kripke satisfaction at world w.  Throws std::out_of_range for an invalid
// world id and std::invalid_argument for an atom missing from the valuation.
bool evaluate(const KripkeModel& m, int w, const Formula& f);

// {"worlds": n, "accessibility": [[i,j],...], "valuation": {"atom": [ids]},
//  "designated": i}
std::string to_json(const KripkeModel& m);
KripkeModel model_from_json(const std::string& json_text);

// Search-space guard for sat_by_enumeration.
class EnumerationLimitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct EnumerationOptions {
    // Abort (throw EnumerationLimitError) once this many valuation checks
    // have been spent.
    std::uint64_t max_checks = 200'000'000;
};

// Tree-model world bound sufficient for deciding satisfiability of f by
// enumeration (1 + the recursive diamond budget of nnf(f)).
int sufficient_worlds(const Formula& f);

// First model of f with at most max_worlds worlds in the deterministic
// enumeration order (world count ascending, canonical tree frames in
// lexicographic order, valuations in numeric order), or nullopt if none
// exists within the bound.
std::optional<KripkeModel> sat_by_enumeration(const Formula& f, int max_worlds,
                                              const EnumerationOptions& opts = {});

// Projected number of valuation checks sat_by_enumeration may spend on f with
// the given bound; lets callers keep generated test formulas inside the
// enumeration guard.
std::uint64_t enumeration_cost(const Formula& f, int max_worlds);

}  // namespace nlimodal

#endif  // NLIMODAL_KRIPKE_HPP
