#pragma once

#include <string>
#include <variant>
#include <vector>

#include "minprod/errors.hpp"

namespace minprod {

// Leaf families mirror the catalog constructors; File defers to a descriptor
// document on disk.
struct SphereLeaf {
    int dim = 1;
    int codim = 0;
};
struct TorusLeaf {
    int k = 2;
};
struct VeroneseLeaf {};
struct IsoparametricLeaf {
    int dim = 1;
    int g = 1;
};
struct OtfkmLeaf {
    int k = 1;
};
struct LawsonLeaf {
    int m = 1;
    int k = 1;
};
struct BipolarLeaf {};
struct FileLeaf {
    std::string path;
};

using LeafSpec = std::variant<SphereLeaf, TorusLeaf, VeroneseLeaf, IsoparametricLeaf, OtfkmLeaf,
                              LawsonLeaf, BipolarLeaf, FileLeaf>;

// Tree of catalog leaves combined by k-ary minimal product. Every product
// node has >= 2 children.
class ProductExpression {
public:
    static ProductExpression leaf(LeafSpec spec) {
        ProductExpression e;
        e.node_ = std::move(spec);
        return e;
    }
    static ProductExpression product(std::vector<ProductExpression> children) {
        if (children.size() < 2) throw Error("a product needs at least 2 factors");
        ProductExpression e;
        e.node_ = std::move(children);
        return e;
    }

    bool is_leaf() const { return std::holds_alternative<LeafSpec>(node_); }
    const LeafSpec& leaf_spec() const { return std::get<LeafSpec>(node_); }
    const std::vector<ProductExpression>& children() const {
        return std::get<std::vector<ProductExpression>>(node_);
    }

private:
    ProductExpression() = default;
    std::variant<LeafSpec, std::vector<ProductExpression>> node_;
};

// Canonical source form; parse_expression(to_string(e)) reproduces e.
std::string to_string(const LeafSpec& leaf);
std::string to_string(const ProductExpression& e);

}  // namespace minprod
