#include "partref/functor.hh"

#include <algorithm>
#include <cctype>

#include "partref/errors.hh"

namespace partref {

namespace {

enum class Tok { Name, Numeral, LParen, RParen, Plus, Times, Caret, End };

struct Token {
    Tok kind;
    std::string text;
    std::size_t column;
};

std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < text.size()) {
        const char c = text[i];
        const std::size_t col = i + 1;
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
        } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) ++j;
            std::string word(text.substr(i, j - i));
            out.push_back({word == "x" ? Tok::Times : Tok::Name, word, col});
            i = j;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
            out.push_back({Tok::Numeral, std::string(text.substr(i, j - i)), col});
            i = j;
        } else {
            Tok kind;
            switch (c) {
                case '(': kind = Tok::LParen; break;
                case ')': kind = Tok::RParen; break;
                case '+': kind = Tok::Plus; break;
                case '^': kind = Tok::Caret; break;
                default: throw ParseError(std::string("unexpected character '") + c + "' in functor term", 1, col);
            }
            out.push_back({kind, std::string(1, c), col});
            ++i;
        }
    }
    out.push_back({Tok::End, "", text.size() + 1});
    return out;
}

bool is_reserved(const std::string& name) {
    return name == "X" || name == "P" || name == "B" || name == "D" || name == "Z" || name == "Q";
}

class TermParser {
public:
    explicit TermParser(std::string_view text) : toks_(tokenize(text)) {}

    FunctorTerm parse() {
        if (peek().kind == Tok::End) throw ParseError("empty functor term", 1, 1);
        FunctorTerm t = sum();
        if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'");
        return t;
    }

private:
    const Token& peek() const { return toks_[pos_]; }
    const Token& next() { return toks_[pos_++]; }
    [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, 1, peek().column); }

    FunctorTerm chain(TermKind kind, Tok op, FunctorTerm (TermParser::*operand)()) {
        FunctorTerm first = (this->*operand)();
        if (peek().kind != op) return first;
        FunctorTerm node;
        node.kind = kind;
        node.children.push_back(std::move(first));
        while (peek().kind == op) {
            next();
            node.children.push_back((this->*operand)());
        }
        return node;
    }

    FunctorTerm sum() { return chain(TermKind::Coproduct, Tok::Plus, &TermParser::product); }
    FunctorTerm product() { return chain(TermKind::Product, Tok::Times, &TermParser::unary); }

    FunctorTerm unary() {
        const Token& t = peek();
        if (t.kind == Tok::Name && t.text.size() == 1) {
            TermKind kind;
            bool prefix = true;
            switch (t.text[0]) {
                case 'P': kind = TermKind::Powerset; break;
                case 'B': kind = TermKind::Bag; break;
                case 'D': kind = TermKind::Dist; break;
                case 'Z': kind = TermKind::IntGroup; break;
                case 'Q': kind = TermKind::RatGroup; break;
                default: prefix = false; kind = TermKind::Argument; break;
            }
            if (prefix) {
                next();
                FunctorTerm node;
                node.kind = kind;
                node.children.push_back(unary());
                return node;
            }
        }
        return postfix();
    }

    FunctorTerm postfix() {
        FunctorTerm t = atom();
        while (peek().kind == Tok::Caret) {
            next();
            if (peek().kind != Tok::Name && peek().kind != Tok::Numeral) fail("expected an alphabet name after '^'");
            const Token& name = next();
            if (is_reserved(name.text)) throw ParseError("'" + name.text + "' cannot name an alphabet", 1, name.column);
            FunctorTerm node;
            node.kind = TermKind::Exponent;
            node.name = name.text;
            node.children.push_back(std::move(t));
            t = std::move(node);
        }
        return t;
    }

    FunctorTerm atom() {
        const Token& t = peek();
        switch (t.kind) {
            case Tok::LParen: {
                next();
                FunctorTerm inner = sum();
                if (peek().kind != Tok::RParen) fail("expected ')'");
                next();
                return inner;
            }
            case Tok::Name: {
                next();
                FunctorTerm leaf;
                if (t.text == "X") {
                    leaf.kind = TermKind::Argument;
                } else {
                    if (is_reserved(t.text)) throw ParseError("'" + t.text + "' needs an operand", 1, t.column);
                    leaf.kind = TermKind::Const;
                    leaf.name = t.text;
                }
                return leaf;
            }
            case Tok::Numeral: {
                next();
                FunctorTerm leaf;
                leaf.kind = TermKind::Const;
                leaf.name = t.text;
                return leaf;
            }
            case Tok::End: fail("unexpected end of functor term");
            default: fail("unexpected '" + t.text + "'");
        }
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
};

bool mentions_argument(const FunctorTerm& t) {
    if (t.kind == TermKind::Argument) return true;
    for (const FunctorTerm& c : t.children)
        if (mentions_argument(c)) return true;
    return false;
}

LayerKind base_kind(TermKind kind) {
    switch (kind) {
        case TermKind::Powerset: return LayerKind::Powerset;
        case TermKind::Bag: return LayerKind::Bag;
        case TermKind::Dist: return LayerKind::Distribution;
        case TermKind::IntGroup: return LayerKind::IntGroup;
        case TermKind::RatGroup: return LayerKind::RatGroup;
        default: return LayerKind::Polynomial;
    }
}

class Flattener {
public:
    Flattener(SortTable& table, const FiniteSets& sets) : table_(table), sets_(sets) {}

    SortIdx visit(const FunctorTerm& t) {
        if (t.kind == TermKind::Argument) return 0;
        const SortIdx s = static_cast<SortIdx>(table_.sorts.size());
        table_.sorts.emplace_back();
        table_.index[&t] = s;
        SortDescriptor desc;
        desc.term = &t;
        desc.kind = base_kind(t.kind);
        std::vector<Symbol> symbols;
        switch (t.kind) {
            case TermKind::Powerset:
            case TermKind::Bag:
            case TermKind::Dist:
            case TermKind::IntGroup:
            case TermKind::RatGroup:
                desc.child = visit(t.children[0]);
                break;
            case TermKind::Const:
                for (const std::string& e : sets_.elements(t.name)) {
                    symbols.push_back({e, 0});
                    desc.arg_sorts.emplace_back();
                }
                break;
            case TermKind::Product: {
                std::vector<SortIdx> args;
                std::vector<const std::vector<std::string>*> consts;
                for (const FunctorTerm& c : t.children) {
                    if (c.kind == TermKind::Const)
                        consts.push_back(&sets_.elements(c.name));
                    else
                        args.push_back(visit(c));
                }
                std::vector<std::uint32_t> digits(consts.size(), 0);
                std::size_t count = 1;
                for (const auto* elems : consts) {
                    count *= elems->size();
                    if (count > 1000000) throw Error("product of constant sets is too large");
                }
                for (std::size_t k = 0; k < count; ++k) {
                    std::string name = "(";
                    for (std::size_t i = 0; i < consts.size(); ++i) {
                        if (i) name += ",";
                        name += (*consts[i])[digits[i]];
                    }
                    name += ")";
                    symbols.push_back({name, static_cast<std::uint32_t>(args.size())});
                    desc.arg_sorts.push_back(args);
                    for (std::size_t i = consts.size(); i-- > 0;) {
                        if (++digits[i] < consts[i]->size()) break;
                        digits[i] = 0;
                    }
                }
                break;
            }
            case TermKind::Coproduct:
                for (std::size_t i = 0; i < t.children.size(); ++i) {
                    const FunctorTerm& c = t.children[i];
                    const std::string inj = "in" + std::to_string(i + 1);
                    desc.summand_base.push_back(static_cast<std::uint32_t>(symbols.size()));
                    if (c.kind == TermKind::Const) {
                        for (const std::string& e : sets_.elements(c.name)) {
                            symbols.push_back({inj + "(" + e + ")", 0});
                            desc.arg_sorts.emplace_back();
                        }
                    } else {
                        symbols.push_back({inj, 1});
                        desc.arg_sorts.push_back({visit(c)});
                    }
                }
                break;
            case TermKind::Exponent: {
                const std::size_t arity = sets_.elements(t.name).size();
                const SortIdx child = visit(t.children[0]);
                symbols.push_back({"^" + t.name, static_cast<std::uint32_t>(arity)});
                desc.arg_sorts.emplace_back(arity, child);
                break;
            }
            case TermKind::Argument:
                break;
        }
        if (desc.kind == LayerKind::Polynomial) {
            if (symbols.empty()) throw Error("constant set '" + t.name + "' is empty");
            desc.signature = Signature(std::move(symbols));
        }
        table_.sorts[s] = std::move(desc);
        return s;
    }

private:
    SortTable& table_;
    const FiniteSets& sets_;
};

void render(const FunctorTerm& t, std::string& out, bool nested) {
    switch (t.kind) {
        case TermKind::Argument: out += "X"; return;
        case TermKind::Const: out += t.name; return;
        case TermKind::Powerset: out += "P "; break;
        case TermKind::Bag: out += "B "; break;
        case TermKind::Dist: out += "D "; break;
        case TermKind::IntGroup: out += "Z "; break;
        case TermKind::RatGroup: out += "Q "; break;
        case TermKind::Exponent: {
            const FunctorTerm& c = t.children[0];
            const bool simple = c.kind == TermKind::Argument || c.kind == TermKind::Const;
            if (!simple) out += "(";
            render(c, out, false);
            if (!simple) out += ")";
            out += "^" + t.name;
            return;
        }
        case TermKind::Product:
        case TermKind::Coproduct: {
            if (nested) out += "(";
            for (std::size_t i = 0; i < t.children.size(); ++i) {
                if (i) out += t.kind == TermKind::Product ? " x " : " + ";
                render(t.children[i], out, true);
            }
            if (nested) out += ")";
            return;
        }
    }
    const FunctorTerm& c = t.children[0];
    const bool wrap = c.kind == TermKind::Exponent;
    if (wrap) out += "(";
    render(c, out, true);
    if (wrap) out += ")";
}

}  // namespace

FunctorTerm parse_functor_term(std::string_view text) { return TermParser(text).parse(); }

std::string to_string(const FunctorTerm& term) {
    std::string out;
    render(term, out, false);
    return out;
}

void FiniteSets::declare(const std::string& name, std::vector<std::string> elements) {
    if (is_reserved(name) || name == "x") throw Error("'" + name + "' is reserved and cannot name a set");
    if (!name.empty() && std::isdigit(static_cast<unsigned char>(name[0])))
        throw Error("set name '" + name + "' must not start with a digit");
    if (sets_.count(name)) throw Error("set '" + name + "' declared twice");
    if (elements.empty()) throw Error("set '" + name + "' has no elements");
    std::vector<std::string> sorted = elements;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw Error("set '" + name + "' lists an element twice");
    sets_[name] = std::move(elements);
}

bool FiniteSets::contains(const std::string& name) const {
    if (sets_.count(name)) return true;
    return !name.empty() && std::all_of(name.begin(), name.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

const std::vector<std::string>& FiniteSets::elements(const std::string& name) const {
    auto it = sets_.find(name);
    if (it != sets_.end()) return it->second;
    if (!contains(name)) throw Error("undeclared set '" + name + "'");
    auto& cached = numerals_[name];
    if (cached.empty()) {
        unsigned long k = 0;
        try {
            k = std::stoul(name);
        } catch (const std::exception&) {
            throw Error("numeral '" + name + "' is out of range");
        }
        if (k == 0) throw Error("the numeral 0 denotes an empty set");
        if (k > 1000000) throw Error("numeral '" + name + "' is too large");
        for (unsigned long i = 0; i < k; ++i) cached.push_back(std::to_string(i));
    }
    return cached;
}

SortIdx SortTable::sort_of(const FunctorTerm* term) const {
    if (term->kind == TermKind::Argument) return 0;
    auto it = index.find(term);
    if (it == index.end()) throw Error("subterm has no sort");
    return it->second;
}

SortTable flatten(const FunctorTerm& term, const FiniteSets& sets) {
    if (!mentions_argument(term)) throw Error("functor term does not mention X");
    if (term.kind == TermKind::Argument) throw Error("the identity functor X has no transitions to minimize");
    SortTable table;
    Flattener(table, sets).visit(term);
    return table;
}

std::uint32_t product_symbol(const FunctorTerm& product, const FiniteSets& sets,
                             const std::vector<std::uint32_t>& const_values) {
    std::uint32_t index = 0;
    std::size_t k = 0;
    for (const FunctorTerm& c : product.children) {
        if (c.kind != TermKind::Const) continue;
        index = index * static_cast<std::uint32_t>(sets.elements(c.name).size()) + const_values.at(k++);
    }
    return index;
}

}  // namespace partref
