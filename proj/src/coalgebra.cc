#include "partref/coalgebra.hh"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <optional>
#include <sstream>

#include <json.hpp>

#include "partref/errors.hh"
#include "partref/serialize.hh"

namespace partref {

namespace {

bool is_name_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

bool valid_name(std::string_view s) { return !s.empty() && std::all_of(s.begin(), s.end(), is_name_char); }

void write_value(ByteWriter& out, const FunctorTerm& term, const Value& v) {
    switch (term.kind) {
        case TermKind::Argument:
        case TermKind::Const:
            out.u32(v.index);
            break;
        case TermKind::Powerset:
            out.u32(static_cast<std::uint32_t>(v.children.size()));
            for (const Value& c : v.children) out.bytes(serialize_value(term.children[0], c));
            break;
        case TermKind::Bag:
        case TermKind::Dist:
        case TermKind::IntGroup:
        case TermKind::RatGroup:
            out.u32(static_cast<std::uint32_t>(v.children.size()));
            for (std::size_t i = 0; i < v.children.size(); ++i)
                out.bytes(serialize_value(term.children[0], v.children[i])).rational(v.weights[i]);
            break;
        case TermKind::Product:
            for (std::size_t i = 0; i < term.children.size(); ++i) write_value(out, term.children[i], v.children[i]);
            break;
        case TermKind::Coproduct:
            out.u32(v.index);
            write_value(out, term.children[v.index], v.children[0]);
            break;
        case TermKind::Exponent:
            for (const Value& c : v.children) write_value(out, term.children[0], c);
            break;
    }
}

// Merges equal members and drops zero weights; members ordered by bytes.
void merge_weighted(const FunctorTerm& child, Value& v) {
    std::vector<std::pair<std::string, std::size_t>> keyed;
    keyed.reserve(v.children.size());
    for (std::size_t i = 0; i < v.children.size(); ++i) keyed.emplace_back(serialize_value(child, v.children[i]), i);
    std::stable_sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    Value out;
    out.index = v.index;
    for (std::size_t i = 0; i < keyed.size();) {
        std::size_t j = i;
        Rational total;
        while (j < keyed.size() && keyed[j].first == keyed[i].first) total += v.weights[keyed[j++].second];
        if (!total.is_zero()) {
            out.children.push_back(std::move(v.children[keyed[i].second]));
            out.weights.push_back(total);
        }
        i = j;
    }
    v = std::move(out);
}

void dedup_members(const FunctorTerm& child, Value& v) {
    std::vector<std::pair<std::string, std::size_t>> keyed;
    keyed.reserve(v.children.size());
    for (std::size_t i = 0; i < v.children.size(); ++i) keyed.emplace_back(serialize_value(child, v.children[i]), i);
    std::sort(keyed.begin(), keyed.end());
    keyed.erase(std::unique(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first == b.first; }),
                keyed.end());
    std::vector<Value> members;
    members.reserve(keyed.size());
    for (const auto& [key, i] : keyed) members.push_back(std::move(v.children[i]));
    v.children = std::move(members);
}

// Checks raw weights of a weighted map, then merges. Returns an error
// message, empty when the map is acceptable.
std::string finish_weighted(const FunctorTerm& term, Value& v) {
    for (const Rational& w : v.weights) {
        switch (term.kind) {
            case TermKind::IntGroup:
                if (!w.is_integer()) return "weight " + w.to_string() + " is not an integer";
                break;
            case TermKind::Bag:
                if (!w.is_integer() || w.is_negative()) return "multiplicity " + w.to_string() + " is not a natural number";
                break;
            case TermKind::Dist:
                if (w.is_negative()) return "probability " + w.to_string() + " is negative";
                break;
            default:
                break;
        }
    }
    canonicalize_value(term, v);
    if (term.kind == TermKind::Dist) {
        Rational total;
        for (const Rational& w : v.weights) total += w;
        if (total != Rational(1)) return "probabilities sum to " + total.to_string() + ", not 1";
    }
    return {};
}

class ValueParser {
public:
    ValueParser(std::string_view line, std::size_t line_no, std::size_t column_base, const Coalgebra& sys)
        : s_(line), line_(line_no), base_(column_base), sys_(sys) {}

    Value parse_all(const FunctorTerm& term) {
        Value v = parse(term);
        skip_ws();
        if (pos_ < s_.size()) fail("unexpected trailing input '" + std::string(s_.substr(pos_)) + "'");
        return v;
    }

private:
    [[noreturn]] void fail(const std::string& what) const { fail_at(pos_, what); }
    [[noreturn]] void fail_at(std::size_t pos, const std::string& what) const {
        throw ParseError(what, line_, base_ + pos + 1);
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }
    void expect(char c) {
        if (peek() != c) {
            if (pos_ >= s_.size()) fail(std::string("expected '") + c + "' but the line ended");
            fail(std::string("expected '") + c + "' but found '" + s_[pos_] + "'");
        }
        ++pos_;
    }
    std::string name() {
        skip_ws();
        const std::size_t start = pos_;
        while (pos_ < s_.size() && is_name_char(s_[pos_])) ++pos_;
        if (start == pos_) {
            if (pos_ >= s_.size()) fail("expected a name but the line ended");
            fail(std::string("expected a name but found '") + s_[pos_] + "'");
        }
        return std::string(s_.substr(start, pos_ - start));
    }
    Rational weight() {
        skip_ws();
        const std::size_t start = pos_;
        while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '-' ||
                                    s_[pos_] == '+' || s_[pos_] == '/' || s_[pos_] == '.'))
            ++pos_;
        if (start == pos_) fail("expected a weight");
        try {
            return Rational::parse(s_.substr(start, pos_ - start));
        } catch (const ParseError& e) {
            fail_at(start, e.what());
        }
    }

    template <class F>
    void list(char close, F item) {
        if (peek() == close) {
            ++pos_;
            return;
        }
        while (true) {
            item();
            if (peek() == ',') {
                ++pos_;
                continue;
            }
            expect(close);
            return;
        }
    }

    Value parse(const FunctorTerm& term) {
        Value v;
        const std::size_t start = (skip_ws(), pos_);
        switch (term.kind) {
            case TermKind::Argument: {
                const std::string n = name();
                auto it = sys_.state_index.find(n);
                if (it == sys_.state_index.end()) fail_at(start, "unknown state '" + n + "'");
                v.index = it->second;
                break;
            }
            case TermKind::Const: {
                const std::string n = name();
                const auto& elems = sys_.sets.elements(term.name);
                auto it = std::find(elems.begin(), elems.end(), n);
                if (it == elems.end()) fail_at(start, "'" + n + "' is not an element of " + term.name);
                v.index = static_cast<std::uint32_t>(it - elems.begin());
                break;
            }
            case TermKind::Powerset:
                expect('{');
                list('}', [&] { v.children.push_back(parse(term.children[0])); });
                canonicalize_value(term, v);
                break;
            case TermKind::Bag:
            case TermKind::Dist:
            case TermKind::IntGroup:
            case TermKind::RatGroup: {
                expect('{');
                list('}', [&] {
                    v.children.push_back(parse(term.children[0]));
                    expect(':');
                    v.weights.push_back(weight());
                });
                const std::string err = finish_weighted(term, v);
                if (!err.empty()) fail_at(start, err);
                break;
            }
            case TermKind::Product:
                expect('(');
                for (std::size_t i = 0; i < term.children.size(); ++i) {
                    if (i) expect(',');
                    v.children.push_back(parse(term.children[i]));
                }
                expect(')');
                break;
            case TermKind::Coproduct: {
                const std::string inj = name();
                std::size_t k = 0;
                if (inj.size() > 2 && inj.compare(0, 2, "in") == 0 &&
                    std::all_of(inj.begin() + 2, inj.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
                    k = std::stoul(inj.substr(2));
                if (k < 1 || k > term.children.size())
                    fail_at(start, "expected an injection in1.." + std::string("in") + std::to_string(term.children.size()) +
                                       " but found '" + inj + "'");
                v.index = static_cast<std::uint32_t>(k - 1);
                expect('(');
                v.children.push_back(parse(term.children[k - 1]));
                expect(')');
                break;
            }
            case TermKind::Exponent: {
                const auto& letters = sys_.sets.elements(term.name);
                std::vector<std::optional<Value>> slots(letters.size());
                expect('[');
                list(']', [&] {
                    const std::size_t at = (skip_ws(), pos_);
                    const std::string letter = name();
                    auto it = std::find(letters.begin(), letters.end(), letter);
                    if (it == letters.end()) fail_at(at, "'" + letter + "' is not a letter of " + term.name);
                    auto& slot = slots[it - letters.begin()];
                    if (slot) fail_at(at, "letter '" + letter + "' given twice");
                    expect(':');
                    slot = parse(term.children[0]);
                });
                for (std::size_t i = 0; i < letters.size(); ++i) {
                    if (!slots[i]) fail_at(start, "no successor for letter '" + letters[i] + "'");
                    v.children.push_back(std::move(*slots[i]));
                }
                break;
            }
        }
        return v;
    }

    std::string_view s_;
    std::size_t pos_ = 0;
    std::size_t line_;
    std::size_t base_;
    const Coalgebra& sys_;
};

std::string_view trim(std::string_view s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::vector<std::string> split_words(std::string_view s) {
    std::vector<std::string> out;
    std::istringstream in{std::string(s)};
    std::string w;
    while (in >> w) out.push_back(w);
    return out;
}

struct Line {
    std::size_t number;
    std::string_view text;  // comment stripped
};

std::vector<Line> split_lines(std::string_view text) {
    std::vector<Line> out;
    std::size_t number = 1;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        std::string_view line = text.substr(start, end - start);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        const std::size_t hash = line.find('#');
        if (hash != std::string_view::npos) line = line.substr(0, hash);
        out.push_back({number++, line});
        start = end + 1;
    }
    return out;
}

void set_functor(Coalgebra& sys, const std::string& text, std::size_t line, std::size_t column) {
    try {
        sys.functor = std::make_shared<const FunctorTerm>(parse_functor_term(text));
    } catch (const ParseError& e) {
        throw ParseError(std::string("functor: ") + e.what(), line, column + e.column() - 1);
    }
    sys.functor_text = to_string(*sys.functor);
}

void declare_set(Coalgebra& sys, bool alphabet, const std::string& name, std::vector<std::string> elements,
                 std::size_t line, std::size_t column) {
    if (!valid_name(name)) throw ParseError("invalid set name '" + name + "'", line, column);
    for (const std::string& e : elements)
        if (!valid_name(e)) throw ParseError("invalid element name '" + e + "' in set " + name, line, column);
    try {
        sys.sets.declare(name, std::move(elements));
    } catch (const ParseError&) {
        throw;
    } catch (const Error& e) {
        throw ParseError(e.what(), line, column);
    }
    sys.set_order.push_back({alphabet, name});
}

void check_term_names(const FunctorTerm& t, const FiniteSets& sets) {
    if ((t.kind == TermKind::Const || t.kind == TermKind::Exponent) && !sets.contains(t.name))
        throw ParseError("functor mentions undeclared set '" + t.name + "'");
    for (const FunctorTerm& c : t.children) check_term_names(c, sets);
}

void remap_states(const FunctorTerm& term, Value& v, const std::vector<StateIdx>& map) {
    if (term.kind == TermKind::Argument) {
        v.index = map[v.index];
        return;
    }
    switch (term.kind) {
        case TermKind::Powerset:
        case TermKind::Bag:
        case TermKind::Dist:
        case TermKind::IntGroup:
        case TermKind::RatGroup:
        case TermKind::Exponent:
            for (Value& c : v.children) remap_states(term.children[0], c, map);
            break;
        case TermKind::Product:
            for (std::size_t i = 0; i < v.children.size(); ++i) remap_states(term.children[i], v.children[i], map);
            break;
        case TermKind::Coproduct:
            remap_states(term.children[v.index], v.children[0], map);
            break;
        default:
            break;
    }
}

// JSON decoding.

using ojson = nlohmann::ordered_json;

[[noreturn]] void json_fail(const std::string& path, const std::string& what) { throw ParseError(path + ": " + what); }

std::string json_name(const ojson& j, const std::string& path) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_number_unsigned()) return std::to_string(j.get<std::uint64_t>());
    if (j.is_number_integer() && j.get<std::int64_t>() >= 0) return std::to_string(j.get<std::int64_t>());
    json_fail(path, "expected a name");
}

Rational json_weight(const ojson& j, const std::string& path) {
    if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
    if (j.is_string()) {
        try {
            return Rational::parse(j.get<std::string>());
        } catch (const ParseError& e) {
            json_fail(path, e.what());
        }
    }
    if (j.is_number_float()) json_fail(path, "fractional weights must be given as strings such as \"1/3\" or \"0.25\"");
    json_fail(path, "expected a weight");
}

Value json_value(const ojson& j, const FunctorTerm& term, const Coalgebra& sys, const std::string& path) {
    Value v;
    switch (term.kind) {
        case TermKind::Argument: {
            const std::string n = json_name(j, path);
            auto it = sys.state_index.find(n);
            if (it == sys.state_index.end()) json_fail(path, "unknown state '" + n + "'");
            v.index = it->second;
            break;
        }
        case TermKind::Const: {
            const std::string n = json_name(j, path);
            const auto& elems = sys.sets.elements(term.name);
            auto it = std::find(elems.begin(), elems.end(), n);
            if (it == elems.end()) json_fail(path, "'" + n + "' is not an element of " + term.name);
            v.index = static_cast<std::uint32_t>(it - elems.begin());
            break;
        }
        case TermKind::Powerset:
            if (!j.is_array()) json_fail(path, "expected an array of members");
            for (std::size_t i = 0; i < j.size(); ++i)
                v.children.push_back(json_value(j[i], term.children[0], sys, path + "[" + std::to_string(i) + "]"));
            canonicalize_value(term, v);
            break;
        case TermKind::Bag:
        case TermKind::Dist:
        case TermKind::IntGroup:
        case TermKind::RatGroup: {
            if (!j.is_array()) json_fail(path, "expected an array of [member, weight] pairs");
            for (std::size_t i = 0; i < j.size(); ++i) {
                const std::string p = path + "[" + std::to_string(i) + "]";
                if (!j[i].is_array() || j[i].size() != 2) json_fail(p, "expected a [member, weight] pair");
                v.children.push_back(json_value(j[i][0], term.children[0], sys, p + "[0]"));
                v.weights.push_back(json_weight(j[i][1], p + "[1]"));
            }
            const std::string err = finish_weighted(term, v);
            if (!err.empty()) json_fail(path, err);
            break;
        }
        case TermKind::Product:
            if (!j.is_array() || j.size() != term.children.size())
                json_fail(path, "expected an array of " + std::to_string(term.children.size()) + " components");
            for (std::size_t i = 0; i < term.children.size(); ++i)
                v.children.push_back(json_value(j[i], term.children[i], sys, path + "[" + std::to_string(i) + "]"));
            break;
        case TermKind::Coproduct: {
            if (!j.is_object() || !j.contains("in") || !j.contains("value") || !j["in"].is_number_integer())
                json_fail(path, "expected {\"in\": k, \"value\": ...}");
            const auto k = j["in"].get<std::int64_t>();
            if (k < 1 || static_cast<std::size_t>(k) > term.children.size())
                json_fail(path, "injection " + std::to_string(k) + " out of range");
            v.index = static_cast<std::uint32_t>(k - 1);
            v.children.push_back(json_value(j["value"], term.children[k - 1], sys, path + ".value"));
            break;
        }
        case TermKind::Exponent: {
            if (!j.is_object()) json_fail(path, "expected an object keyed by letters");
            const auto& letters = sys.sets.elements(term.name);
            for (const auto& [key, val] : j.items())
                if (std::find(letters.begin(), letters.end(), key) == letters.end())
                    json_fail(path, "'" + key + "' is not a letter of " + term.name);
            for (const std::string& letter : letters) {
                if (!j.contains(letter)) json_fail(path, "no successor for letter '" + letter + "'");
                v.children.push_back(json_value(j[letter], term.children[0], sys, path + "." + letter));
            }
            break;
        }
    }
    return v;
}

}  // namespace

std::string serialize_value(const FunctorTerm& term, const Value& value) {
    ByteWriter out;
    write_value(out, term, value);
    return out.take();
}

void canonicalize_value(const FunctorTerm& term, Value& v) {
    switch (term.kind) {
        case TermKind::Argument:
        case TermKind::Const:
            return;
        case TermKind::Powerset:
            for (Value& c : v.children) canonicalize_value(term.children[0], c);
            dedup_members(term.children[0], v);
            return;
        case TermKind::Bag:
        case TermKind::Dist:
        case TermKind::IntGroup:
        case TermKind::RatGroup:
            for (Value& c : v.children) canonicalize_value(term.children[0], c);
            merge_weighted(term.children[0], v);
            return;
        case TermKind::Product:
            for (std::size_t i = 0; i < v.children.size(); ++i) canonicalize_value(term.children[i], v.children[i]);
            return;
        case TermKind::Coproduct:
            canonicalize_value(term.children[v.index], v.children[0]);
            return;
        case TermKind::Exponent:
            for (Value& c : v.children) canonicalize_value(term.children[0], c);
            return;
    }
}

Coalgebra parse_coalgebra(std::string_view text) {
    Coalgebra sys;
    const std::vector<Line> lines = split_lines(text);
    struct Pending {
        std::size_t line;
        std::size_t column;
        std::string_view value;
    };
    std::vector<Pending> pending;
    std::size_t functor_line = 0;

    for (const Line& l : lines) {
        const std::string_view body = trim(l.text);
        if (body.empty()) continue;
        const std::size_t indent = static_cast<std::size_t>(body.data() - l.text.data());
        const std::size_t colon = body.find(':');
        if (colon == std::string_view::npos) throw ParseError("expected 'keyword ...:'", l.number, indent + 1);
        const std::vector<std::string> head = split_words(body.substr(0, colon));
        const std::string_view rest = body.substr(colon + 1);
        const std::size_t rest_column = indent + colon + 2;
        if (head.size() == 1 && head[0] == "functor") {
            if (sys.functor) throw ParseError("second functor declaration", l.number, indent + 1);
            set_functor(sys, std::string(rest), l.number, rest_column);
            functor_line = l.number;
        } else if (head.size() == 2 && (head[0] == "alphabet" || head[0] == "constants")) {
            declare_set(sys, head[0] == "alphabet", head[1], split_words(rest), l.number, indent + 1);
        } else if (head.size() == 2 && head[0] == "state") {
            const std::string& name = head[1];
            if (!valid_name(name)) throw ParseError("invalid state name '" + name + "'", l.number, indent + 1);
            if (sys.state_index.count(name)) throw ParseError("state '" + name + "' declared twice", l.number, indent + 1);
            sys.state_index[name] = static_cast<StateIdx>(sys.states.size());
            sys.states.push_back({name, {}});
            pending.push_back({l.number, rest_column, rest});
        } else {
            throw ParseError("unknown declaration '" + std::string(trim(body.substr(0, colon))) + "'", l.number, indent + 1);
        }
    }
    if (!sys.functor) throw ParseError("missing 'functor:' declaration", 1, 1);
    try {
        check_term_names(*sys.functor, sys.sets);
        flatten(*sys.functor, sys.sets);
    } catch (const ParseError& e) {
        throw ParseError(e.what(), functor_line, 1);
    } catch (const Error& e) {
        throw ParseError(e.what(), functor_line, 1);
    }
    for (std::size_t i = 0; i < pending.size(); ++i)
        sys.states[i].value = ValueParser(pending[i].value, pending[i].line, pending[i].column - 1, sys).parse_all(*sys.functor);
    return sys;
}

Coalgebra parse_coalgebra_json(std::string_view text) {
    ojson doc;
    try {
        doc = ojson::parse(text);
    } catch (const ojson::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("document: expected an object");
    Coalgebra sys;
    if (!doc.contains("functor") || !doc["functor"].is_string()) throw ParseError("functor: expected a string");
    set_functor(sys, doc["functor"].get<std::string>(), 1, 1);
    for (const char* key : {"alphabets", "constants"}) {
        if (!doc.contains(key)) continue;
        if (!doc[key].is_object()) json_fail(key, "expected an object of sets");
        for (const auto& [name, elems] : doc[key].items()) {
            if (!elems.is_array()) json_fail(std::string(key) + "." + name, "expected an array of elements");
            std::vector<std::string> list;
            for (std::size_t i = 0; i < elems.size(); ++i)
                list.push_back(json_name(elems[i], std::string(key) + "." + name + "[" + std::to_string(i) + "]"));
            try {
                declare_set(sys, std::string(key) == "alphabets", name, std::move(list), 1, 1);
            } catch (const ParseError& e) {
                json_fail(std::string(key) + "." + name, e.what());
            }
        }
    }
    try {
        check_term_names(*sys.functor, sys.sets);
        flatten(*sys.functor, sys.sets);
    } catch (const Error& e) {
        json_fail("functor", e.what());
    }
    if (!doc.contains("states") || !doc["states"].is_array()) throw ParseError("states: expected an array");
    const ojson& states = doc["states"];
    for (std::size_t i = 0; i < states.size(); ++i) {
        const std::string path = "states[" + std::to_string(i) + "]";
        if (!states[i].is_object() || !states[i].contains("name") || !states[i].contains("value"))
            json_fail(path, "expected {\"name\": ..., \"value\": ...}");
        const std::string name = json_name(states[i]["name"], path + ".name");
        if (!valid_name(name)) json_fail(path, "invalid state name '" + name + "'");
        if (sys.state_index.count(name)) json_fail(path, "state '" + name + "' declared twice");
        sys.state_index[name] = static_cast<StateIdx>(sys.states.size());
        sys.states.push_back({name, {}});
    }
    for (std::size_t i = 0; i < states.size(); ++i)
        sys.states[i].value =
            json_value(states[i]["value"], *sys.functor, sys, "states[" + std::to_string(i) + "].value");
    return sys;
}

std::string print_value(const Coalgebra& sys, const FunctorTerm& term, const Value& v) {
    std::string out;
    switch (term.kind) {
        case TermKind::Argument:
            return sys.states[v.index].name;
        case TermKind::Const:
            return sys.sets.elements(term.name)[v.index];
        case TermKind::Powerset:
            out = "{";
            for (std::size_t i = 0; i < v.children.size(); ++i) {
                if (i) out += ", ";
                out += print_value(sys, term.children[0], v.children[i]);
            }
            return out + "}";
        case TermKind::Bag:
        case TermKind::Dist:
        case TermKind::IntGroup:
        case TermKind::RatGroup:
            out = "{";
            for (std::size_t i = 0; i < v.children.size(); ++i) {
                if (i) out += ", ";
                out += print_value(sys, term.children[0], v.children[i]) + ": " + v.weights[i].to_string();
            }
            return out + "}";
        case TermKind::Product:
            out = "(";
            for (std::size_t i = 0; i < v.children.size(); ++i) {
                if (i) out += ", ";
                out += print_value(sys, term.children[i], v.children[i]);
            }
            return out + ")";
        case TermKind::Coproduct:
            return "in" + std::to_string(v.index + 1) + "(" + print_value(sys, term.children[v.index], v.children[0]) + ")";
        case TermKind::Exponent: {
            const auto& letters = sys.sets.elements(term.name);
            out = "[";
            for (std::size_t i = 0; i < v.children.size(); ++i) {
                if (i) out += ", ";
                out += letters[i] + ": " + print_value(sys, term.children[0], v.children[i]);
            }
            return out + "]";
        }
    }
    return out;
}

std::string print_coalgebra(const Coalgebra& sys) {
    std::string out = "functor: " + sys.functor_text + "\n";
    for (const SetDecl& d : sys.set_order) {
        out += d.alphabet ? "alphabet " : "constants ";
        out += d.name + ":";
        for (const std::string& e : sys.sets.elements(d.name)) out += " " + e;
        out += "\n";
    }
    for (const StateDecl& s : sys.states) out += "state " + s.name + ": " + print_value(sys, *sys.functor, s.value) + "\n";
    return out;
}

Coalgebra quotient(const Coalgebra& sys, const std::vector<std::vector<StateIdx>>& blocks) {
    std::vector<StateIdx> rep(sys.size(), 0);
    std::vector<char> is_rep(sys.size(), 0);
    for (const auto& block : blocks) {
        if (block.empty()) continue;
        const StateIdx r = *std::min_element(block.begin(), block.end());
        for (StateIdx x : block) rep[x] = r;
        is_rep[r] = 1;
    }
    std::vector<StateIdx> new_index(sys.size(), 0);
    Coalgebra out;
    out.functor_text = sys.functor_text;
    out.functor = sys.functor;
    out.sets = sys.sets;
    out.set_order = sys.set_order;
    for (StateIdx x = 0; x < sys.size(); ++x) {
        if (!is_rep[x]) continue;
        new_index[x] = static_cast<StateIdx>(out.states.size());
        out.state_index[sys.states[x].name] = new_index[x];
        out.states.push_back({sys.states[x].name, {}});
    }
    std::vector<StateIdx> map(sys.size());
    for (StateIdx x = 0; x < sys.size(); ++x) map[x] = new_index[rep[x]];
    for (StateIdx x = 0; x < sys.size(); ++x) {
        if (!is_rep[x]) continue;
        Value v = sys.states[x].value;
        remap_states(*sys.functor, v, map);
        canonicalize_value(*sys.functor, v);
        out.states[new_index[x]].value = std::move(v);
    }
    return out;
}

std::vector<std::uint32_t> parse_initial_partition(std::string_view text, const Coalgebra& sys) {
    std::vector<std::uint32_t> classes(sys.size(), 0);
    std::vector<char> listed(sys.size(), 0);
    std::uint32_t next_class = 1;
    for (const Line& l : split_lines(text)) {
        bool any = false;
        std::size_t i = 0;
        while (i < l.text.size()) {
            if (std::isspace(static_cast<unsigned char>(l.text[i]))) {
                ++i;
                continue;
            }
            std::size_t j = i;
            while (j < l.text.size() && !std::isspace(static_cast<unsigned char>(l.text[j]))) ++j;
            const std::string name(l.text.substr(i, j - i));
            auto it = sys.state_index.find(name);
            if (it == sys.state_index.end()) throw ParseError("unknown state '" + name + "'", l.number, i + 1);
            if (listed[it->second]) throw ParseError("state '" + name + "' listed twice", l.number, i + 1);
            listed[it->second] = 1;
            classes[it->second] = next_class;
            any = true;
            i = j;
        }
        if (any) ++next_class;
    }
    return classes;
}

}  // namespace partref
