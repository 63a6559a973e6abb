#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "partref/functor.hh"
#include "partref/rational.hh"
#include "partref/types.hh"

namespace partref {

/// A value of a functor term for one state, shaped like the term.
///
/// Argument: index is a state. Const: index is an element of the set.
/// Powerset: children are the members. Weighted kinds: children with a
/// parallel weight each. Product: one child per factor. Coproduct: index is
/// the 0-based summand and the single child its payload. Exponent: one
/// child per alphabet letter in declaration order.
struct Value {
    std::uint32_t index = 0;
    std::vector<Value> children;
    std::vector<Rational> weights;

    friend bool operator==(const Value&, const Value&) = default;
};

struct StateDecl {
    std::string name;
    Value value;
};

struct SetDecl {
    bool alphabet = false;  // declared with "alphabet", else with "constants"
    std::string name;
};

struct Coalgebra {
    std::string functor_text;
    std::shared_ptr<const FunctorTerm> functor;
    FiniteSets sets;
    std::vector<SetDecl> set_order;
    std::vector<StateDecl> states;
    std::map<std::string, StateIdx> state_index;

    std::size_t size() const { return states.size(); }
};

// Line-based text format; see docs/FORMAT.md. Throws ParseError with a
// line and column on malformed or ill-typed input.
Coalgebra parse_coalgebra(std::string_view text);

// The same data model as a JSON document.
Coalgebra parse_coalgebra_json(std::string_view text);

std::string print_coalgebra(const Coalgebra& sys);

std::string print_value(const Coalgebra& sys, const FunctorTerm& term, const Value& value);

// Canonical byte encoding of a value; equal bytes iff structurally equal.
std::string serialize_value(const FunctorTerm& term, const Value& value);

// Deduplicates set members, merges and drops zero weights, and orders
// members by their canonical bytes, recursively.
void canonicalize_value(const FunctorTerm& term, Value& value);

// One state per block (its first member in declaration order), with every
// successor replaced by the representative of its block.
Coalgebra quotient(const Coalgebra& sys, const std::vector<std::vector<StateIdx>>& blocks);

// Initial partition: one class per line, state names separated by blanks,
// '#' starts a comment. Returns a class per state; unlisted states get 0,
// the k-th listed line gets k.
std::vector<std::uint32_t> parse_initial_partition(std::string_view text, const Coalgebra& sys);

}  // namespace partref
