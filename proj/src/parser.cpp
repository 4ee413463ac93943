#include "tensorlog/error.hpp"
#include "tensorlog/formula.hpp"

#include <cctype>
#include <map>

namespace tensorlog {

namespace {

enum class Tok { Upper, Lower, LParen, RParen, Comma, Amp, Bar, Tilde, End };

struct Token
{
    Tok kind;
    std::string text;
    std::size_t line;
    std::size_t column;
};

std::vector<Token> tokenize(std::string_view text)
{
    std::vector<Token> out;
    std::size_t line = 1, col = 1;
    std::size_t i = 0;
    auto advance = [&] {
        if (text[i] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
        ++i;
    };
    while (i < text.size()) {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance();
            continue;
        }
        std::size_t l = line, cl = col;
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::string word;
            while (i < text.size()
                   && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) {
                word += text[i];
                advance();
            }
            Tok kind = std::isupper(static_cast<unsigned char>(word[0])) ? Tok::Upper : Tok::Lower;
            out.push_back({kind, std::move(word), l, cl});
            continue;
        }
        Tok kind;
        switch (c) {
        case '(': kind = Tok::LParen; break;
        case ')': kind = Tok::RParen; break;
        case ',': kind = Tok::Comma; break;
        case '&': kind = Tok::Amp; break;
        case '|': kind = Tok::Bar; break;
        case '~': kind = Tok::Tilde; break;
        default:
            throw SyntaxError(std::string("unexpected character '") + c + "'", l, cl);
        }
        out.push_back({kind, std::string(1, c), l, cl});
        advance();
    }
    out.push_back({Tok::End, "", line, col});
    return out;
}

class Parser
{
public:
    explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

    Formula parse()
    {
        Formula f = formula();
        if (peek().kind != Tok::End)
            fail("unexpected '" + peek().text + "'");
        return f;
    }

private:
    const Token& peek(std::size_t ahead = 0) const
    {
        return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
    }

    Token next() { return toks_[std::min(pos_++, toks_.size() - 1)]; }

    [[noreturn]] void fail(const std::string& msg) const
    {
        const Token& t = peek();
        throw SyntaxError(t.kind == Tok::End ? msg + " (at end of input)" : msg, t.line, t.column);
    }

    void expect(Tok kind, const char* what)
    {
        if (peek().kind != kind)
            fail(std::string("expected ") + what);
        ++pos_;
    }

    bool at_quantifier() const
    {
        return peek().kind == Tok::Lower && (peek().text == "all" || peek().text == "some")
               && peek(1).kind == Tok::Upper;
    }

    Formula formula()
    {
        if (at_quantifier()) {
            bool exists = next().text == "some";
            std::string var = next().text;
            Formula body = formula();
            return exists ? Formula::exists(std::move(var), std::move(body))
                          : Formula::forall(std::move(var), std::move(body));
        }
        return disj();
    }

    Formula disj()
    {
        std::vector<Formula> cs{conj()};
        while (peek().kind == Tok::Bar) {
            ++pos_;
            cs.push_back(conj());
        }
        return cs.size() == 1 ? cs.front() : Formula::disjunction(std::move(cs));
    }

    Formula conj()
    {
        std::vector<Formula> cs{unit()};
        while (peek().kind == Tok::Amp) {
            ++pos_;
            cs.push_back(unit());
        }
        return cs.size() == 1 ? cs.front() : Formula::conjunction(std::move(cs));
    }

    Formula unit()
    {
        switch (peek().kind) {
        case Tok::Tilde:
            ++pos_;
            if (peek().kind == Tok::Lower && !at_quantifier())
                return Formula::literal(atom().negate());
            return Formula::negation(unit());
        case Tok::LParen: {
            ++pos_;
            Formula f = formula();
            expect(Tok::RParen, "')'");
            return f;
        }
        case Tok::Lower:
            if (!at_quantifier())
                return Formula::literal(atom());
            fail("quantifier inside a matrix must be parenthesized");
        default:
            fail("expected an atom, '~' or '('");
        }
    }

    Literal atom()
    {
        const Token pred = next();
        Literal lit;
        lit.predicate = pred.text;
        expect(Tok::LParen, "'(' after predicate name");
        for (;;) {
            const Token& t = peek();
            if (t.kind == Tok::Upper)
                lit.args.push_back(Term::variable(t.text));
            else if (t.kind == Tok::Lower)
                lit.args.push_back(Term::constant(t.text));
            else
                fail("expected a term");
            ++pos_;
            if (peek().kind == Tok::Comma) {
                ++pos_;
                continue;
            }
            expect(Tok::RParen, "',' or ')'");
            break;
        }
        auto [it, inserted] = arity_.emplace(lit.predicate, lit.arity());
        if (!inserted && it->second != lit.arity())
            throw ArityError(std::to_string(pred.line) + ":" + std::to_string(pred.column) + ": predicate '"
                             + lit.predicate + "' used with arity " + std::to_string(lit.arity())
                             + " and " + std::to_string(it->second));
        return lit;
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    std::map<std::string, std::size_t> arity_;
};

} // namespace

Formula parse_formula(std::string_view text)
{
    return Parser(tokenize(text)).parse();
}

} // namespace tensorlog
