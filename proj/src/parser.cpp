#include "crsym/parser.hpp"

#include "crsym/errors.hpp"

#include <cctype>
#include <fstream>
#include <regex>
#include <sstream>

namespace crsym {

namespace {

int max_variable_index(const std::string &text)
{
    static const std::regex var(R"((^|[^A-Za-z0-9_])[zxy]([0-9]+))");
    int n = 0;
    for (auto it = std::sregex_iterator(text.begin(), text.end(), var);
         it != std::sregex_iterator(); ++it)
        n = std::max(n, std::stoi((*it)[2].str()));
    return n;
}

class Parser {
public:
    Parser(const std::string &text, int n) : s_(text), n_(n) {}

    SparsePoly parse()
    {
        SparsePoly p = expr();
        skip_ws();
        if (pos_ != s_.size())
            fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return p;
    }

private:
    const std::string &s_;
    std::size_t pos_ = 0;
    int n_;

    [[noreturn]] void fail(const std::string &msg) const { throw SyntaxError(pos_, msg); }

    void skip_ws()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }

    bool peek(char c)
    {
        skip_ws();
        return pos_ < s_.size() && s_[pos_] == c;
    }

    bool accept(char c)
    {
        if (!peek(c))
            return false;
        ++pos_;
        return true;
    }

    void expect(char c)
    {
        if (!accept(c))
            fail(std::string("expected '") + c + "'");
    }

    bool accept_word(const std::string &w)
    {
        skip_ws();
        if (s_.compare(pos_, w.size(), w) != 0)
            return false;
        std::size_t end = pos_ + w.size();
        if (end < s_.size() && std::isalnum(static_cast<unsigned char>(s_[end])))
            return false;
        pos_ = end;
        return true;
    }

    mpz_class integer()
    {
        skip_ws();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
        if (start == pos_)
            fail("expected integer");
        return mpz_class(s_.substr(start, pos_ - start));
    }

    int exponent()
    {
        skip_ws();
        bool neg = accept('-');
        if (neg)
            throw Error(ErrorKind::NonPolynomial, "negative exponent at position " +
                                                      std::to_string(pos_));
        mpz_class e = accept('(') ? paren_int() : integer();
        if (e > 64)
            fail("exponent too large");
        return static_cast<int>(e.get_si());
    }

    mpz_class paren_int()
    {
        mpz_class e = integer();
        expect(')');
        return e;
    }

    SparsePoly constant(const Scalar &c) const { return SparsePoly::constant(n_, c); }

    SparsePoly expr()
    {
        SparsePoly acc(n_);
        bool first = true;
        for (;;) {
            bool neg = false;
            if (accept('-'))
                neg = true;
            else if (!accept('+') && !first)
                break;
            SparsePoly t = term();
            acc += neg ? -t : t;
            first = false;
        }
        return acc;
    }

    SparsePoly term()
    {
        SparsePoly acc = unary();
        for (;;) {
            if (accept('*')) {
                acc = acc * unary();
            } else if (peek('/')) {
                std::size_t at = pos_;
                ++pos_;
                SparsePoly d = unary();
                if (d.is_zero()) {
                    pos_ = at;
                    fail("division by zero");
                }
                if (d.size() != 1 || d.terms().begin()->first.total_degree() != 0)
                    throw Error(ErrorKind::NonPolynomial,
                                "division by a non-constant at position " + std::to_string(at));
                acc *= d.terms().begin()->second.inverse();
            } else {
                break;
            }
        }
        return acc;
    }

    SparsePoly unary()
    {
        if (accept('-'))
            return -unary();
        if (accept('+'))
            return unary();
        return power();
    }

    SparsePoly power()
    {
        SparsePoly base = primary();
        if (accept('^'))
            return base.pow(exponent());
        return base;
    }

    int variable_index()
    {
        std::size_t at = pos_;
        mpz_class idx = integer();
        if (idx < 1 || idx > n_) {
            pos_ = at;
            fail("variable index out of range");
        }
        return static_cast<int>(idx.get_si()) - 1;
    }

    // p, p/q, optionally followed by i; the suffix binds to the whole literal.
    Scalar number()
    {
        Rational v{integer()};
        if (pos_ + 1 < s_.size() && s_[pos_] == '/' &&
            std::isdigit(static_cast<unsigned char>(s_[pos_ + 1]))) {
            ++pos_;
            std::size_t at = pos_;
            mpz_class d = integer();
            if (d == 0) {
                pos_ = at;
                fail("zero denominator");
            }
            v /= Rational(d);
        }
        Scalar out(v);
        if (accept_word("i"))
            out = out * Scalar::i();
        return out;
    }

    SparsePoly primary()
    {
        skip_ws();
        if (pos_ >= s_.size())
            fail("unexpected end of input");
        const char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            return constant(number());
        }
        if (accept('(')) {
            SparsePoly e = expr();
            expect(')');
            return e;
        }
        if (accept('|')) {
            std::size_t at = pos_;
            SparsePoly e = expr();
            expect('|');
            expect('^');
            int k = exponent();
            if (k % 2 != 0) {
                throw Error(ErrorKind::OddAbsolutePower,
                            "|.|^" + std::to_string(k) + " at position " + std::to_string(at));
            }
            return (e * conjugate(e)).pow(k / 2);
        }
        if (accept_word("Re")) {
            expect('(');
            SparsePoly e = expr();
            expect(')');
            return real_part(e);
        }
        if (accept_word("Im")) {
            expect('(');
            SparsePoly e = expr();
            expect(')');
            return imag_part(e);
        }
        if (accept_word("conj")) {
            expect('(');
            SparsePoly e = expr();
            expect(')');
            return conjugate(e);
        }
        if (accept_word("i"))
            return constant(Scalar::i());
        if (c == 'w') {
            throw Error(ErrorKind::NonPolynomial,
                        "w may not appear in P (position " + std::to_string(pos_) + ")");
        }
        if (c == 'z' || c == 'x' || c == 'y') {
            ++pos_;
            if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_])))
                fail("expected variable index");
            SparsePoly zj = SparsePoly::variable(n_, Var::z(variable_index()));
            if (c == 'z')
                return zj;
            return c == 'x' ? real_part(zj) : imag_part(zj);
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }
};

std::string trim(const std::string &s)
{
    std::size_t a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos)
        return "";
    std::size_t b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

} // namespace

SparsePoly parse_polynomial(const std::string &text, int min_n)
{
    if (trim(text).empty())
        throw SyntaxError(0, "empty expression");
    int n = std::max(max_variable_index(text), min_n);
    if (n == 0)
        n = 1;
    return Parser(text, n).parse();
}

ParsedModel parse_model(const ModelSource &src)
{
    ParsedModel out;
    int min_n = 0;
    if (src.declared_weights) {
        out.weights = WeightVector(*src.declared_weights);
        min_n = out.weights->n();
    }
    out.P = parse_polynomial(src.text, min_n);
    if (out.weights && out.weights->n() != out.P.n())
        throw Error(ErrorKind::DimensionMismatch,
                    "declared " + std::to_string(out.weights->n()) + " weights for " +
                        std::to_string(out.P.n()) + " variables");
    return out;
}

std::vector<Rational> parse_weight_list(const std::string &text)
{
    std::vector<Rational> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty())
            throw SyntaxError(0, "empty weight entry in '" + text + "'");
        try {
            out.push_back(parse_rational(item));
        } catch (const std::invalid_argument &e) {
            throw SyntaxError(0, e.what());
        }
    }
    return out;
}

ModelSource parse_model_text(const std::string &content)
{
    static const std::regex header(R"(^\s*Im\s*\(?\s*w\s*\)?\s*=(.*)$)");
    static const std::regex weights(R"(^\s*weights\s*:(.*)$)");
    std::stringstream ss(content);
    std::string line;
    ModelSource src;
    bool have_expr = false;
    std::size_t offset = 0;
    while (std::getline(ss, line)) {
        std::size_t line_start = offset;
        offset += line.size() + 1;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#')
            continue;
        std::smatch m;
        if (!have_expr) {
            if (!std::regex_match(line, m, header))
                throw SyntaxError(line_start, "expected 'Im w = <expr>'");
            src.text = m[1].str();
            have_expr = true;
        } else if (std::regex_match(line, m, weights)) {
            src.declared_weights = parse_weight_list(m[1].str());
        } else {
            throw SyntaxError(line_start, "unexpected line '" + t + "'");
        }
    }
    if (!have_expr)
        throw SyntaxError(0, "no model line");
    return src;
}

ModelSource read_model_file(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_model_text(buf.str());
}

} // namespace crsym
