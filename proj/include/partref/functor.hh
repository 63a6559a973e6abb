#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "partref/interfaces.hh"
#include "partref/types.hh"

namespace partref {

enum class TermKind { Argument, Const, Powerset, Bag, Dist, IntGroup, RatGroup, Product, Coproduct, Exponent };

// Composite transition type. Const names a finite set, Exponent names the
// alphabet of its exponent.
struct FunctorTerm {
    TermKind kind = TermKind::Argument;
    std::string name;
    std::vector<FunctorTerm> children;
};

/// Parses a functor term:
///
///   sum     := product ('+' product)*
///   product := unary ('x' unary)*
///   unary   := ('P' | 'B' | 'D' | 'Z' | 'Q') unary | postfix
///   postfix := atom ('^' Name)*
///   atom    := 'X' | Name | Numeral | '(' sum ')'
///
/// Chains such as "A x X x X" become one n-ary node; parentheses start a
/// new node. Throws ParseError with a column on malformed input.
FunctorTerm parse_functor_term(std::string_view text);

std::string to_string(const FunctorTerm& term);

// Named finite sets (alphabets and constant sets). A numeral k always
// denotes the set {0, ..., k-1}.
class FiniteSets {
public:
    void declare(const std::string& name, std::vector<std::string> elements);
    bool contains(const std::string& name) const;
    // Elements of a declared set or numeral. Throws Error on unknown names.
    const std::vector<std::string>& elements(const std::string& name) const;
    const std::map<std::string, std::vector<std::string>>& declared() const { return sets_; }

private:
    std::map<std::string, std::vector<std::string>> sets_;
    mutable std::map<std::string, std::vector<std::string>> numerals_;
};

/// One sort of the flattened functor: a single layer whose successors live
/// in child sorts. Sort 0 is the whole term; Argument leaves refer to it.
///
/// Base layers (P, B, D, Z, Q) have exactly one child sort. Products,
/// coproducts, exponents and constant sets are polynomial layers: each
/// symbol lists the sorts of its argument positions.
struct SortDescriptor {
    const FunctorTerm* term = nullptr;
    LayerKind kind = LayerKind::Powerset;
    SortIdx child = 0;
    Signature signature;
    std::vector<std::vector<SortIdx>> arg_sorts;
    // Coproducts: first symbol of each summand (a constant summand owns one
    // nullary symbol per element).
    std::vector<std::uint32_t> summand_base;
};

struct SortTable {
    std::vector<SortDescriptor> sorts;

    std::size_t size() const { return sorts.size(); }
    const SortDescriptor& operator[](SortIdx s) const { return sorts[s]; }

    // Sort of a non-folded subterm; Argument maps to 0.
    SortIdx sort_of(const FunctorTerm* term) const;

    std::map<const FunctorTerm*, SortIdx> index;
};

/// Splits a term into one sort per non-leaf subterm (duplicates stay
/// distinct). Constant factors of products and constant summands of
/// coproducts are folded into the parent's symbols; any other constant is
/// a sort of nullary symbols. The table refers into `term`, which must
/// outlive it. Throws Error on undeclared names or terms without X.
SortTable flatten(const FunctorTerm& term, const FiniteSets& sets);

// Mixed-radix index of a tuple of constant elements in a product layer.
std::uint32_t product_symbol(const FunctorTerm& product, const FiniteSets& sets, const std::vector<std::uint32_t>& const_values);

}  // namespace partref
