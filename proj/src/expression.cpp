#include "minprod/expression.hpp"

namespace minprod {

std::string to_string(const LeafSpec& leaf) {
    struct Printer {
        std::string operator()(const SphereLeaf& s) const {
            if (s.codim == 0) return "sphere(" + std::to_string(s.dim) + ")";
            return "sphere(" + std::to_string(s.dim) + ", codim=" + std::to_string(s.codim) + ")";
        }
        std::string operator()(const TorusLeaf& t) const {
            return "torus(k=" + std::to_string(t.k) + ")";
        }
        std::string operator()(const VeroneseLeaf&) const { return "veronese()"; }
        std::string operator()(const IsoparametricLeaf& i) const {
            return "isoparametric(" + std::to_string(i.dim) + ", g=" + std::to_string(i.g) + ")";
        }
        std::string operator()(const OtfkmLeaf& o) const {
            return "otfkm(k=" + std::to_string(o.k) + ")";
        }
        std::string operator()(const LawsonLeaf& l) const {
            return "lawson(" + std::to_string(l.m) + ", " + std::to_string(l.k) + ")";
        }
        std::string operator()(const BipolarLeaf&) const { return "bipolar_tau31()"; }
        std::string operator()(const FileLeaf& f) const { return "file(" + f.path + ")"; }
    };
    return std::visit(Printer{}, leaf);
}

std::string to_string(const ProductExpression& e) {
    if (e.is_leaf()) return to_string(e.leaf_spec());
    std::string out = "product(";
    bool first = true;
    for (const auto& child : e.children()) {
        if (!first) out += ", ";
        first = false;
        out += to_string(child);
    }
    out += ")";
    return out;
}

}  // namespace minprod
