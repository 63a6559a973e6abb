#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "partref/interfaces.hh"
#include "partref/layer.hh"
#include "partref/random.hh"

namespace partref {

// Test oracles computed directly on decoded values, independent of the
// incremental init/update code paths.
namespace reference {

// H!(t): the value's type.
H1Value type_of(LayerKind kind, SortIdx sort, const LayerValue& value);

// w(C)(t) with C given as a membership flag per state.
Weight weight(LayerKind kind, SortIdx sort, const LayerValue& value, std::span<const char> in_c);

// H(chi)(t) for a map chi: states -> {0, 1, 2} (0 outside C, 1 in C \ S,
// 2 in S), serialized like the interfaces' split keys.
std::string split_key(LayerKind kind, const LayerValue& value, std::span<const std::uint8_t> chi);

LayerValue random_value(LayerKind kind, const Signature* signature, std::size_t num_states, Rng& rng);

}  // namespace reference

// An interface under test together with the layer kinds of its sorts.
// Tagged targets are coproducts: their weights and keys carry the sort.
struct AxiomTarget {
    std::string name;
    std::shared_ptr<const RefinementInterface> iface;
    std::vector<LayerKind> kinds;
    Signature signature;
    bool tagged = false;
};

struct AxiomReport {
    std::string name;
    std::size_t cases = 0;
    std::size_t init_failures = 0;
    std::size_t update_failures = 0;
    std::string first_failure;

    bool ok() const { return init_failures == 0 && update_failures == 0; }
};

AxiomReport check_axioms(const AxiomTarget& target, std::uint64_t seed, std::size_t cases);

// Every shipped interface plus a coproduct of all of them, keyed by name:
// powerset, int-group, rat-group, distribution, bag, polynomial, coproduct.
std::vector<AxiomTarget> shipped_axiom_targets();

// Powerset interface whose update forgets w(C \ S); must fail the axioms.
AxiomTarget broken_axiom_target();

}  // namespace partref
