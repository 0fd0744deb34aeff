#include "minprod/parser.hpp"

#include <cctype>
#include <limits>

namespace minprod {

namespace {

struct Parser {
    const std::string& src;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
    }
    [[noreturn]] void fail(const std::string& expected, std::size_t at) {
        throw ParseError("parse error at position " + std::to_string(at) + ": expected " +
                             expected,
                         at);
    }
    [[noreturn]] void fail(const std::string& expected) { fail(expected, pos); }

    bool try_punct(char c) {
        skip_ws();
        if (pos < src.size() && src[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    void expect_punct(char c) {
        if (!try_punct(c)) fail("'" + std::string(1, c) + "'");
    }

    std::string identifier() {
        skip_ws();
        std::size_t start = pos;
        while (pos < src.size() &&
               (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_'))
            ++pos;
        if (pos == start) fail("a name");
        return src.substr(start, pos - start);
    }

    int integer() {
        skip_ws();
        std::size_t start = pos;
        while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) ++pos;
        if (pos == start) fail("an integer");
        long long value = 0;
        for (std::size_t i = start; i < pos; ++i) {
            value = value * 10 + (src[i] - '0');
            if (value > std::numeric_limits<int>::max()) fail("a smaller integer", start);
        }
        return static_cast<int>(value);
    }

    int keyword_integer(const std::string& keyword) {
        skip_ws();
        std::size_t start = pos;
        if (identifier() != keyword) fail("'" + keyword + "='", start);
        expect_punct('=');
        return integer();
    }

    std::string file_path() {
        skip_ws();
        std::size_t start = pos;
        while (pos < src.size() && src[pos] != ')') ++pos;
        std::size_t end = pos;
        while (end > start && std::isspace(static_cast<unsigned char>(src[end - 1]))) --end;
        if (end == start) fail("a file path", start);
        return src.substr(start, end - start);
    }

    ProductExpression expression() {
        skip_ws();
        std::size_t start = pos;
        std::string name = identifier();
        expect_punct('(');
        if (name == "product") {
            std::vector<ProductExpression> children;
            children.push_back(expression());
            while (true) {
                if (try_punct(',')) {
                    children.push_back(expression());
                    continue;
                }
                if (try_punct(')')) break;
                fail("')' or ','");
            }
            if (children.size() < 2) fail("a product of at least 2 factors", start);
            return ProductExpression::product(std::move(children));
        }
        if (name == "sphere") {
            SphereLeaf leaf;
            leaf.dim = integer();
            if (try_punct(',')) leaf.codim = keyword_integer("codim");
            expect_punct(')');
            return ProductExpression::leaf(leaf);
        }
        if (name == "torus") {
            TorusLeaf leaf;
            leaf.k = keyword_integer("k");
            expect_punct(')');
            return ProductExpression::leaf(leaf);
        }
        if (name == "veronese") {
            expect_punct(')');
            return ProductExpression::leaf(VeroneseLeaf{});
        }
        if (name == "isoparametric") {
            IsoparametricLeaf leaf;
            leaf.dim = integer();
            expect_punct(',');
            leaf.g = keyword_integer("g");
            expect_punct(')');
            return ProductExpression::leaf(leaf);
        }
        if (name == "otfkm") {
            OtfkmLeaf leaf;
            leaf.k = keyword_integer("k");
            expect_punct(')');
            return ProductExpression::leaf(leaf);
        }
        if (name == "lawson") {
            LawsonLeaf leaf;
            leaf.m = integer();
            expect_punct(',');
            leaf.k = integer();
            expect_punct(')');
            return ProductExpression::leaf(leaf);
        }
        if (name == "bipolar_tau31") {
            expect_punct(')');
            return ProductExpression::leaf(BipolarLeaf{});
        }
        if (name == "file") {
            FileLeaf leaf;
            leaf.path = file_path();
            expect_punct(')');
            return ProductExpression::leaf(leaf);
        }
        fail(
            "one of product, sphere, torus, veronese, isoparametric, otfkm, lawson, "
            "bipolar_tau31, file",
            start);
    }
};

}  // namespace

ProductExpression parse_expression(const std::string& src) {
    Parser parser{src};
    ProductExpression e = parser.expression();
    parser.skip_ws();
    if (parser.pos != src.size()) parser.fail("end of input");
    return e;
}

}  // namespace minprod
