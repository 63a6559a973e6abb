#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "partref/rational.hh"
#include "partref/types.hh"

namespace partref {

// Edge label. Powerset edges carry 1, weighted edges their nonzero weight,
// polynomial edges the 1-based argument position.
struct Label {
    SortIdx sort = 0;
    Rational value;

    friend bool operator==(const Label&, const Label&) = default;
};

// Value of H1 for one state (its "type").
struct H1Value {
    SortIdx sort = 0;
    std::uint32_t block_class = 0;  // initial-partition class, 0 when none
    std::uint32_t symbol = 0;       // polynomial layers
    Rational magnitude;             // powerset: nonempty flag; group: total; bag: total count

    friend bool operator==(const H1Value&, const H1Value&) = default;
};

/// Element of the weight set W.
///
/// Powerset: outside in {0,1} flags successors outside the block, inside
/// counts successors in it. Group, bag, distribution: total weight outside
/// and inside the block. Polynomial: symbol plus one digit per argument,
/// 1 when the argument lies in the block.
struct Weight {
    SortIdx sort = 0;
    Rational outside;
    Rational inside;
    std::uint32_t symbol = 0;
    std::string marks;

    friend bool operator==(const Weight&, const Weight&) = default;
};

std::string to_string(const Weight& w);

// update() result: (w(S), split key in H3, w(C \ S)). The key is a canonical
// byte string; byte order is the total order on H3.
struct UpdateResult {
    Weight to_subblock;
    std::string split_key;
    Weight to_rest;
};

// Edge seen by the oracle: its label and the current block of its target.
struct SignatureEdge {
    Label label;
    std::uint32_t block = 0;
};

enum class LayerKind { Powerset, IntGroup, RatGroup, Distribution, Bag, Polynomial };

const char* layer_kind_name(LayerKind kind);

struct Symbol {
    std::string name;
    std::uint32_t arity = 0;
};

// Finite polynomial signature. The default term used for arity mismatches is
// the symbol with the smallest name applied to all zeros.
class Signature {
public:
    Signature() = default;
    explicit Signature(std::vector<Symbol> symbols);

    std::size_t size() const { return symbols_.size(); }
    const Symbol& operator[](std::uint32_t i) const { return symbols_[i]; }
    std::span<const Symbol> symbols() const { return symbols_; }
    std::uint32_t default_symbol() const { return default_symbol_; }
    std::uint32_t max_arity() const { return max_arity_; }

private:
    std::vector<Symbol> symbols_;
    std::uint32_t default_symbol_ = 0;
    std::uint32_t max_arity_ = 0;
};

class RefinementInterface {
public:
    virtual ~RefinementInterface() = default;

    virtual std::string name() const = 0;

    // Weight of a state w.r.t. the whole state set, given all its out-labels.
    virtual Weight init(const H1Value& type, std::span<const Label> labels) const = 0;

    // labels: labels of the state's edges into S; w: its weight for C.
    virtual UpdateResult update(std::span<const Label> labels, const Weight& w) const = 0;

    // Canonical serialization of a type, used as the initial grouping key.
    virtual std::string serialize_type(const H1Value& type) const = 0;

    // Canonical serialization of H(kappa)(xi(x)) for the given target blocks.
    virtual std::string oracle_signature(const H1Value& type, std::span<const SignatureEdge> edges) const = 0;
};

class PowersetInterface final : public RefinementInterface {
public:
    std::string name() const override { return "powerset"; }
    Weight init(const H1Value& type, std::span<const Label> labels) const override;
    UpdateResult update(std::span<const Label> labels, const Weight& w) const override;
    std::string serialize_type(const H1Value& type) const override;
    std::string oracle_signature(const H1Value& type, std::span<const SignatureEdge> edges) const override;
};

// G-valued functor for G = Z (integral) or G = Q.
class GroupValuedInterface final : public RefinementInterface {
public:
    explicit GroupValuedInterface(bool integral) : integral_(integral) {}
    std::string name() const override { return integral_ ? "int-group" : "rat-group"; }
    bool integral() const { return integral_; }
    Weight init(const H1Value& type, std::span<const Label> labels) const override;
    UpdateResult update(std::span<const Label> labels, const Weight& w) const override;
    std::string serialize_type(const H1Value& type) const override;
    std::string oracle_signature(const H1Value& type, std::span<const SignatureEdge> edges) const override;

private:
    bool integral_;
};

class DistributionInterface final : public RefinementInterface {
public:
    std::string name() const override { return "distribution"; }
    Weight init(const H1Value& type, std::span<const Label> labels) const override;
    UpdateResult update(std::span<const Label> labels, const Weight& w) const override;
    std::string serialize_type(const H1Value& type) const override;
    std::string oracle_signature(const H1Value& type, std::span<const SignatureEdge> edges) const override;
};

class BagInterface final : public RefinementInterface {
public:
    std::string name() const override { return "bag"; }
    Weight init(const H1Value& type, std::span<const Label> labels) const override;
    UpdateResult update(std::span<const Label> labels, const Weight& w) const override;
    std::string serialize_type(const H1Value& type) const override;
    std::string oracle_signature(const H1Value& type, std::span<const SignatureEdge> edges) const override;
};

class PolynomialInterface final : public RefinementInterface {
public:
    explicit PolynomialInterface(Signature signature) : signature_(std::move(signature)) {}
    std::string name() const override { return "polynomial"; }
    const Signature& signature() const { return signature_; }
    Weight init(const H1Value& type, std::span<const Label> labels) const override;
    UpdateResult update(std::span<const Label> labels, const Weight& w) const override;
    std::string serialize_type(const H1Value& type) const override;
    std::string oracle_signature(const H1Value& type, std::span<const SignatureEdge> edges) const override;

private:
    Signature signature_;
};

/// Coproduct of interfaces, one per sort. Every value carries its sort;
/// init and update dispatch on it after dropping labels of other sorts, and
/// all serializations start with the sort index.
class CoproductInterface final : public RefinementInterface {
public:
    explicit CoproductInterface(std::vector<std::shared_ptr<const RefinementInterface>> parts);

    std::string name() const override;
    std::size_t num_sorts() const { return parts_.size(); }
    const RefinementInterface& part(SortIdx sort) const { return *parts_.at(sort); }

    Weight init(const H1Value& type, std::span<const Label> labels) const override;
    UpdateResult update(std::span<const Label> labels, const Weight& w) const override;
    std::string serialize_type(const H1Value& type) const override;
    std::string oracle_signature(const H1Value& type, std::span<const SignatureEdge> edges) const override;

private:
    std::vector<std::shared_ptr<const RefinementInterface>> parts_;
};

std::shared_ptr<const RefinementInterface> make_interface(LayerKind kind, const Signature* signature = nullptr);

// Key helpers shared by the interfaces and the reference model.
namespace h3 {

// Subset of 3 = {0, 1, 2} as a bit vector.
std::string powerset(bool has_outside, bool has_rest, bool has_subblock);

// Element of G^(3): weight outside C, in C \ S, in S.
std::string weighted(const Rational& outside, const Rational& rest, const Rational& subblock);

// sigma applied to digits in {0, 1, 2}.
std::string polynomial(std::uint32_t symbol, std::string_view digits);

}  // namespace h3

}  // namespace partref
