#include "partref/interfaces.hh"

#include <algorithm>
#include <sstream>
#include <utility>

#include "partref/errors.hh"
#include "partref/serialize.hh"

namespace partref {

namespace {

Rational label_sum(std::span<const Label> labels) {
    Rational total;
    for (const Label& l : labels) total += l.value;
    return total;
}

Weight make_weight(Rational outside, Rational inside) {
    Weight w;
    w.outside = outside;
    w.inside = inside;
    return w;
}

// val = <H(=2), id, H(=1)> on a triple (outside C, in C \ S, in S).
UpdateResult split_triple(const Rational& a0, const Rational& a1, const Rational& a2) {
    return UpdateResult{make_weight(a0 + a1, a2), h3::weighted(a0, a1, a2), make_weight(a0 + a2, a1)};
}

// Sorted (block, weight) map with zero entries dropped.
std::string weighted_signature(std::span<const SignatureEdge> edges) {
    std::vector<std::pair<std::uint32_t, Rational>> entries;
    entries.reserve(edges.size());
    for (const SignatureEdge& e : edges) entries.emplace_back(e.block, e.label.value);
    std::sort(entries.begin(), entries.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    ByteWriter out;
    for (std::size_t i = 0; i < entries.size();) {
        std::size_t j = i;
        Rational total;
        while (j < entries.size() && entries[j].first == entries[i].first) total += entries[j++].second;
        if (!total.is_zero()) out.u32(entries[i].first).rational(total);
        i = j;
    }
    return out.take();
}

}  // namespace

std::string to_string(const Weight& w) {
    std::ostringstream os;
    os << "sort " << w.sort << " (" << w.outside << ", " << w.inside << ")";
    if (!w.marks.empty() || w.symbol != 0) {
        os << " symbol " << w.symbol << " [";
        for (char c : w.marks) os << static_cast<int>(c);
        os << "]";
    }
    return os.str();
}

const char* layer_kind_name(LayerKind kind) {
    switch (kind) {
        case LayerKind::Powerset: return "P";
        case LayerKind::IntGroup: return "Z";
        case LayerKind::RatGroup: return "Q";
        case LayerKind::Distribution: return "D";
        case LayerKind::Bag: return "B";
        case LayerKind::Polynomial: return "poly";
    }
    return "?";
}

Signature::Signature(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {
    if (symbols_.empty()) throw Error("polynomial signature without symbols");
    for (std::uint32_t i = 0; i < symbols_.size(); ++i) {
        if (symbols_[i].name < symbols_[default_symbol_].name) default_symbol_ = i;
        max_arity_ = std::max(max_arity_, symbols_[i].arity);
    }
}

namespace h3 {

std::string powerset(bool has_outside, bool has_rest, bool has_subblock) {
    const auto bits = static_cast<std::uint8_t>((has_outside ? 1 : 0) | (has_rest ? 2 : 0) | (has_subblock ? 4 : 0));
    return std::string(1, static_cast<char>(bits));
}

std::string weighted(const Rational& outside, const Rational& rest, const Rational& subblock) {
    ByteWriter out;
    out.rational(outside).rational(rest).rational(subblock);
    return out.take();
}

std::string polynomial(std::uint32_t symbol, std::string_view digits) {
    ByteWriter out;
    out.u32(symbol).raw(digits);
    return out.take();
}

}  // namespace h3

// Powerset: W = 2 x N, a weight (r, n) says whether successors exist outside
// the block and how many lie inside it.

Weight PowersetInterface::init(const H1Value&, std::span<const Label> labels) const {
    return make_weight(0, static_cast<std::int64_t>(labels.size()));
}

UpdateResult PowersetInterface::update(std::span<const Label> labels, const Weight& w) const {
    const bool r = !w.outside.is_zero();
    const std::int64_t n_s = static_cast<std::int64_t>(labels.size());
    const std::int64_t n_c = w.inside.num();
    const std::int64_t n_rest = std::max<std::int64_t>(n_c - n_s, 0);
    return UpdateResult{
        make_weight((r || n_rest > 0) ? 1 : 0, n_s),
        h3::powerset(r, n_rest > 0, n_s > 0),
        make_weight((r || n_s > 0) ? 1 : 0, n_rest),
    };
}

std::string PowersetInterface::serialize_type(const H1Value& type) const {
    return std::string(1, type.magnitude.is_zero() ? '\0' : '\1');
}

std::string PowersetInterface::oracle_signature(const H1Value& type, std::span<const SignatureEdge> edges) const {
    std::vector<std::uint32_t> blocks;
    blocks.reserve(edges.size());
    for (const SignatureEdge& e : edges) blocks.push_back(e.block);
    std::sort(blocks.begin(), blocks.end());
    blocks.erase(std::unique(blocks.begin(), blocks.end()), blocks.end());
    ByteWriter out;
    out.raw(serialize_type(type));
    for (std::uint32_t b : blocks) out.u32(b);
    return out.take();
}

// Group-valued: W = G x G, (weight outside the block, weight inside).

Weight GroupValuedInterface::init(const H1Value&, std::span<const Label> labels) const {
    return make_weight(0, label_sum(labels));
}

UpdateResult GroupValuedInterface::update(std::span<const Label> labels, const Weight& w) const {
    const Rational to_s = label_sum(labels);
    return split_triple(w.outside, w.inside - to_s, to_s);
}

std::string GroupValuedInterface::serialize_type(const H1Value& type) const {
    ByteWriter out;
    out.rational(type.magnitude);
    return out.take();
}

std::string GroupValuedInterface::oracle_signature(const H1Value& type, std::span<const SignatureEdge> edges) const {
    return serialize_type(type) + weighted_signature(edges);
}

// Distribution: like the group case, but any triple outside D3 collapses to
// (0, 0, 1).

Weight DistributionInterface::init(const H1Value&, std::span<const Label>) const {
    return make_weight(0, 1);
}

UpdateResult DistributionInterface::update(std::span<const Label> labels, const Weight& w) const {
    const Rational to_s = label_sum(labels);
    const Rational rest = w.inside - to_s;
    const bool in_d3 = !w.outside.is_negative() && !rest.is_negative() && !to_s.is_negative() &&
                       w.outside + rest + to_s == Rational(1);
    if (!in_d3) return split_triple(0, 0, 1);
    return split_triple(w.outside, rest, to_s);
}

std::string DistributionInterface::serialize_type(const H1Value&) const { return {}; }

std::string DistributionInterface::oracle_signature(const H1Value& type, std::span<const SignatureEdge> edges) const {
    return serialize_type(type) + weighted_signature(edges);
}

// Bag: like the group case over N; a negative middle component collapses to
// (0, 0, 0).

Weight BagInterface::init(const H1Value&, std::span<const Label> labels) const {
    return make_weight(0, label_sum(labels));
}

UpdateResult BagInterface::update(std::span<const Label> labels, const Weight& w) const {
    const Rational to_s = label_sum(labels);
    const Rational rest = w.inside - to_s;
    if (rest.is_negative() || !rest.is_integer()) return split_triple(0, 0, 0);
    return split_triple(w.outside, rest, to_s);
}

std::string BagInterface::serialize_type(const H1Value& type) const {
    ByteWriter out;
    out.rational(type.magnitude);
    return out.take();
}

std::string BagInterface::oracle_signature(const H1Value& type, std::span<const SignatureEdge> edges) const {
    return serialize_type(type) + weighted_signature(edges);
}

// Polynomial: W = H_Sigma 2, one digit per argument position.

Weight PolynomialInterface::init(const H1Value& type, std::span<const Label> labels) const {
    Weight w;
    if (type.symbol < signature_.size() && signature_[type.symbol].arity == labels.size()) {
        w.symbol = type.symbol;
        w.marks.assign(labels.size(), '\1');
    } else {
        w.symbol = signature_.default_symbol();
        w.marks.assign(signature_[w.symbol].arity, '\0');
    }
    return w;
}

UpdateResult PolynomialInterface::update(std::span<const Label> labels, const Weight& w) const {
    const std::size_t arity = w.marks.size();
    std::string in_s(arity, '\0');
    for (const Label& l : labels) {
        const std::int64_t pos = l.value.num();
        if (l.value.is_integer() && pos >= 1 && static_cast<std::size_t>(pos) <= arity) in_s[pos - 1] = '\1';
    }
    std::string digits(arity, '\0');
    UpdateResult res;
    res.to_subblock.symbol = w.symbol;
    res.to_rest.symbol = w.symbol;
    res.to_subblock.marks.assign(arity, '\0');
    res.to_rest.marks.assign(arity, '\0');
    for (std::size_t i = 0; i < arity; ++i) {
        digits[i] = static_cast<char>(w.marks[i] + in_s[i]);
        res.to_subblock.marks[i] = digits[i] == 2 ? '\1' : '\0';
        res.to_rest.marks[i] = digits[i] == 1 ? '\1' : '\0';
    }
    res.split_key = h3::polynomial(w.symbol, digits);
    return res;
}

std::string PolynomialInterface::serialize_type(const H1Value& type) const {
    ByteWriter out;
    out.u32(type.symbol);
    return out.take();
}

std::string PolynomialInterface::oracle_signature(const H1Value& type, std::span<const SignatureEdge> edges) const {
    std::vector<std::pair<std::int64_t, std::uint32_t>> args;
    args.reserve(edges.size());
    for (const SignatureEdge& e : edges) args.emplace_back(e.label.value.num(), e.block);
    std::sort(args.begin(), args.end());
    ByteWriter out;
    out.raw(serialize_type(type));
    for (const auto& [pos, block] : args) out.i64(pos).u32(block);
    return out.take();
}

// Coproduct.

CoproductInterface::CoproductInterface(std::vector<std::shared_ptr<const RefinementInterface>> parts)
    : parts_(std::move(parts)) {
    if (parts_.empty()) throw Error("coproduct of zero interfaces");
    for (const auto& p : parts_)
        if (!p) throw Error("coproduct with a missing component");
}

std::string CoproductInterface::name() const {
    std::string out = "coproduct(";
    for (std::size_t i = 0; i < parts_.size(); ++i) {
        if (i) out += ", ";
        out += parts_[i]->name();
    }
    return out + ")";
}

namespace {

// filter_i: the labels of sort i. Avoids a copy when nothing is dropped.
std::span<const Label> filter_labels(std::span<const Label> labels, SortIdx sort, std::vector<Label>& scratch) {
    bool all_match = true;
    for (const Label& l : labels) {
        if (l.sort != sort) {
            all_match = false;
            break;
        }
    }
    if (all_match) return labels;
    scratch.clear();
    for (const Label& l : labels)
        if (l.sort == sort) scratch.push_back(l);
    return scratch;
}

}  // namespace

Weight CoproductInterface::init(const H1Value& type, std::span<const Label> labels) const {
    std::vector<Label> scratch;
    Weight w = part(type.sort).init(type, filter_labels(labels, type.sort, scratch));
    w.sort = type.sort;
    return w;
}

UpdateResult CoproductInterface::update(std::span<const Label> labels, const Weight& w) const {
    std::vector<Label> scratch;
    UpdateResult res = part(w.sort).update(filter_labels(labels, w.sort, scratch), w);
    res.to_subblock.sort = w.sort;
    res.to_rest.sort = w.sort;
    ByteWriter key;
    key.u32(w.sort).raw(res.split_key);
    res.split_key = key.take();
    return res;
}

std::string CoproductInterface::serialize_type(const H1Value& type) const {
    ByteWriter out;
    out.u32(type.sort).u32(type.block_class).raw(part(type.sort).serialize_type(type));
    return out.take();
}

std::string CoproductInterface::oracle_signature(const H1Value& type, std::span<const SignatureEdge> edges) const {
    std::vector<SignatureEdge> own;
    own.reserve(edges.size());
    for (const SignatureEdge& e : edges)
        if (e.label.sort == type.sort) own.push_back(e);
    ByteWriter out;
    out.u32(type.sort).u32(type.block_class).raw(part(type.sort).oracle_signature(type, own));
    return out.take();
}

std::shared_ptr<const RefinementInterface> make_interface(LayerKind kind, const Signature* signature) {
    switch (kind) {
        case LayerKind::Powerset: return std::make_shared<PowersetInterface>();
        case LayerKind::IntGroup: return std::make_shared<GroupValuedInterface>(true);
        case LayerKind::RatGroup: return std::make_shared<GroupValuedInterface>(false);
        case LayerKind::Distribution: return std::make_shared<DistributionInterface>();
        case LayerKind::Bag: return std::make_shared<BagInterface>();
        case LayerKind::Polynomial:
            if (!signature) throw Error("polynomial interface needs a signature");
            return std::make_shared<PolynomialInterface>(*signature);
    }
    throw Error("unknown layer kind");
}

}  // namespace partref
