#include "tensorlog/model.hpp"

#include "tensorlog/error.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace tensorlog {

FiniteModel::FiniteModel(std::vector<std::string> constants) : constants_(std::move(constants))
{
    std::sort(constants_.begin(), constants_.end());
    constants_.erase(std::unique(constants_.begin(), constants_.end()), constants_.end());
    if (constants_.empty())
        throw ModelError("a model needs at least one constant");
    for (std::size_t i = 0; i < constants_.size(); ++i)
        index_.emplace(constants_[i], i);
}

FiniteModel FiniteModel::of_size(std::size_t n)
{
    const std::size_t width = std::to_string(n).size();
    std::vector<std::string> names;
    for (std::size_t i = 1; i <= n; ++i) {
        std::string num = std::to_string(i);
        names.push_back("e" + std::string(width - num.size(), '0') + num);
    }
    return FiniteModel(std::move(names));
}

std::optional<std::size_t> FiniteModel::index_of(std::string_view constant) const
{
    auto it = index_.find(constant);
    if (it == index_.end())
        return std::nullopt;
    return it->second;
}

std::size_t FiniteModel::require_index(std::string_view constant) const
{
    auto i = index_of(constant);
    if (!i)
        throw ModelError("unknown constant '" + std::string(constant) + "'");
    return *i;
}

void FiniteModel::declare(const std::string& predicate, std::size_t arity)
{
    auto [it, inserted] = relations_.try_emplace(predicate, Relation{arity, {}});
    if (!inserted && it->second.arity != arity)
        throw ArityError("predicate '" + predicate + "' has arity " + std::to_string(it->second.arity)
                         + ", not " + std::to_string(arity));
}

void FiniteModel::add(const std::string& predicate, Tuple tuple)
{
    for (std::size_t i : tuple)
        if (i >= size())
            throw ModelError("tuple index " + std::to_string(i) + " out of range for '" + predicate + "'");
    declare(predicate, tuple.size());
    relations_.find(predicate)->second.tuples.insert(std::move(tuple));
}

bool FiniteModel::has(std::string_view predicate) const { return relations_.find(predicate) != relations_.end(); }

const Relation& FiniteModel::relation(std::string_view predicate) const
{
    auto it = relations_.find(predicate);
    if (it == relations_.end())
        throw ModelError("unknown predicate '" + std::string(predicate) + "'");
    return it->second;
}

bool FiniteModel::holds(std::string_view predicate, const Tuple& tuple) const
{
    return relation(predicate).tuples.count(tuple) > 0;
}

// ---------------------------------------------------------------- fact files

namespace {

struct Fact
{
    std::string predicate;
    std::vector<std::string> args;
    std::size_t line;
    std::size_t column;
};

bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

class FactScanner
{
public:
    FactScanner(std::string_view line, std::size_t lineno) : s_(line), line_(lineno) {}

    void skip_ws()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }

    bool done()
    {
        skip_ws();
        return pos_ >= s_.size();
    }

    std::size_t column() const { return pos_ + 1; }

    [[noreturn]] void fail(const std::string& msg) const { throw SyntaxError(msg, line_, column()); }

    std::string ident()
    {
        skip_ws();
        if (pos_ >= s_.size() || !std::islower(static_cast<unsigned char>(s_[pos_])))
            fail("expected a lowercase identifier");
        std::size_t start = pos_;
        while (pos_ < s_.size() && ident_char(s_[pos_]))
            ++pos_;
        return std::string(s_.substr(start, pos_ - start));
    }

    std::size_t number()
    {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
        if (start == pos_)
            fail("expected a number");
        return std::stoul(std::string(s_.substr(start, pos_ - start)));
    }

    void expect(char c)
    {
        skip_ws();
        if (pos_ >= s_.size() || s_[pos_] != c)
            fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    bool accept(char c)
    {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    bool accept_word(std::string_view w)
    {
        skip_ws();
        if (s_.substr(pos_, w.size()) == w && (pos_ + w.size() >= s_.size() || !ident_char(s_[pos_ + w.size()]))) {
            pos_ += w.size();
            return true;
        }
        return false;
    }

private:
    std::string_view s_;
    std::size_t line_;
    std::size_t pos_ = 0;
};

} // namespace

FiniteModel load_model(std::string_view text)
{
    std::set<std::string> constants;
    std::vector<Fact> facts;
    std::vector<std::pair<std::string, std::size_t>> declared;

    std::size_t lineno = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t end = text.find('\n', start);
        if (end == std::string_view::npos)
            end = text.size();
        std::string_view line = text.substr(start, end - start);
        start = end + 1;
        ++lineno;
        if (auto pct = line.find('%'); pct != std::string_view::npos)
            line = line.substr(0, pct);

        FactScanner sc(line, lineno);
        while (!sc.done()) {
            if (sc.accept('#')) {
                if (sc.accept_word("const")) {
                    constants.insert(sc.ident());
                } else if (sc.accept_word("pred")) {
                    std::string name = sc.ident();
                    sc.expect('/');
                    declared.emplace_back(std::move(name), sc.number());
                } else {
                    sc.fail("unknown directive");
                }
                sc.expect('.');
                continue;
            }
            Fact f;
            f.line = lineno;
            f.column = sc.column();
            f.predicate = sc.ident();
            sc.expect('(');
            do {
                f.args.push_back(sc.ident());
            } while (sc.accept(','));
            sc.expect(')');
            sc.expect('.');
            constants.insert(f.args.begin(), f.args.end());
            facts.push_back(std::move(f));
        }
        if (end == text.size())
            break;
    }
    if (constants.empty())
        throw ModelError("model has no constants");

    FiniteModel m(std::vector<std::string>(constants.begin(), constants.end()));
    for (const auto& [name, arity] : declared)
        m.declare(name, arity);
    for (const auto& f : facts) {
        Tuple t;
        for (const auto& a : f.args)
            t.push_back(m.require_index(a));
        if (m.has(f.predicate) && m.relation(f.predicate).arity != t.size())
            throw ArityError(std::to_string(f.line) + ":" + std::to_string(f.column) + ": predicate '" + f.predicate
                             + "' used with arity " + std::to_string(t.size()) + " and "
                             + std::to_string(m.relation(f.predicate).arity));
        m.add(f.predicate, std::move(t));
    }
    return m;
}

FiniteModel load_model_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ModelError("cannot open model file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return load_model(ss.str());
}

std::string save_model(const FiniteModel& m)
{
    std::ostringstream os;
    for (const auto& c : m.constants())
        os << "#const " << c << ".\n";
    for (const auto& [name, rel] : m.relations()) {
        os << "#pred " << name << "/" << rel.arity << ".\n";
        for (const auto& t : rel.tuples) {
            os << name << "(";
            for (std::size_t i = 0; i < t.size(); ++i)
                os << (i ? "," : "") << m.constants()[t[i]];
            os << ").\n";
        }
    }
    return os.str();
}

// ---------------------------------------------------------------- encodings

Tensor encode_relation(const FiniteModel& m, std::string_view predicate)
{
    const Relation& rel = m.relation(predicate);
    Tensor t(rel.arity, m.size());
    for (const auto& tuple : rel.tuples)
        t(tuple) = 1.0;
    return t;
}

Tensor encode_negated_relation(const FiniteModel& m, std::string_view predicate)
{
    return complement(encode_relation(m, predicate));
}

Tensor encode_dedup_relation(const FiniteModel& m, const DedupSpec& spec)
{
    Tensor t = encode_relation(m, spec.source);
    if (t.order() != spec.merge_map.size())
        throw ArityError("dedup spec for '" + spec.source + "' has " + std::to_string(spec.merge_map.size())
                         + " arguments but the relation has arity " + std::to_string(t.order()));

    // Fix constant modes from the last one down so earlier mode numbers stay valid.
    std::vector<std::size_t> var_map;
    for (std::size_t pos = spec.merge_map.size(); pos-- > 0;) {
        if (const auto* c = std::get_if<std::string>(&spec.merge_map[pos]))
            t = contract(t, pos, Tensor::one_hot(m.size(), m.require_index(*c)), 0);
    }
    for (const auto& src : spec.merge_map)
        if (const auto* mode = std::get_if<std::size_t>(&src))
            var_map.push_back(*mode);
    if (t.order() == 0)
        return t;
    return generalized_diagonal(t, std::span<const std::size_t>(var_map), spec.order);
}

// ---------------------------------------------------------------- oracle

namespace {

class Grounder
{
public:
    Grounder(const FiniteModel& m, Assignment a) : m_(m), a_(std::move(a)) {}

    int eval(const Formula& f)
    {
        using K = Formula::Kind;
        switch (f.kind()) {
        case K::Literal: {
            const Literal& lit = f.literal();
            const Relation& rel = m_.relation(lit.predicate);
            if (rel.arity != lit.arity())
                throw ArityError("predicate '" + lit.predicate + "' has arity " + std::to_string(rel.arity));
            Tuple t;
            t.reserve(lit.arity());
            for (const auto& term : lit.args)
                t.push_back(resolve(term));
            int v = rel.tuples.count(t) ? 1 : 0;
            return lit.negated ? 1 - v : v;
        }
        case K::Not:
            return 1 - eval(f.body());
        case K::And: {
            int v = 1;
            for (const auto& c : f.children())
                v *= eval(c);
            return v;
        }
        case K::Or: {
            int v = 0;
            for (const auto& c : f.children())
                v += eval(c);
            return std::min(v, 1);
        }
        case K::Exists:
            return exists(f.variable(), f.body());
        case K::Forall:
            return 1 - exists(f.variable(), Formula::negation(f.body()));
        }
        return 0;
    }

private:
    int exists(const std::string& var, const Formula& body)
    {
        auto saved = a_.find(var) != a_.end() ? std::optional<std::size_t>(a_[var]) : std::nullopt;
        int sum = 0;
        for (std::size_t i = 0; i < m_.size(); ++i) {
            a_[var] = i;
            sum += eval(body);
        }
        if (saved)
            a_[var] = *saved;
        else
            a_.erase(var);
        return std::min(sum, 1);
    }

    std::size_t resolve(const Term& t) const
    {
        if (!t.is_variable())
            return m_.require_index(t.name);
        auto it = a_.find(t.name);
        if (it == a_.end())
            throw ModelError("variable '" + t.name + "' is not assigned");
        if (it->second >= m_.size())
            throw ModelError("variable '" + t.name + "' assigned out of range");
        return it->second;
    }

    const FiniteModel& m_;
    Assignment a_;
};

} // namespace

int ground_eval(const FiniteModel& m, const Formula& f, const Assignment& a)
{
    return Grounder(m, a).eval(f);
}

} // namespace tensorlog
