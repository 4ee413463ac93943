#include "tensorlog/json_io.hpp"

#include <sstream>

namespace tensorlog {

using nlohmann::json;

namespace {

json tensor_slice(const Tensor& t, std::size_t depth, std::size_t offset)
{
    if (depth == t.order())
        return t.data()[static_cast<Eigen::Index>(offset)];
    json arr = json::array();
    const std::size_t stride = Tensor::ipow(t.dim(), t.order() - depth - 1);
    for (std::size_t i = 0; i < t.dim(); ++i)
        arr.push_back(tensor_slice(t, depth + 1, offset + i * stride));
    return arr;
}

} // namespace

json tensor_to_json(const Tensor& t) { return tensor_slice(t, 0, 0); }

json program_to_json(const TensorProgram& p)
{
    json dedup = json::array();
    for (const auto& s : p.dedup) {
        json map = json::array();
        for (const auto& src : s.merge_map) {
            if (const auto* mode = std::get_if<std::size_t>(&src))
                map.push_back(*mode + 1);
            else
                map.push_back(std::get<std::string>(src));
        }
        dedup.push_back({{"name", s.predicate}, {"source", s.source}, {"map", map}, {"order", s.order}});
    }

    json defs = json::array();
    for (const auto& d : p.definitions) {
        json ops = json::array();
        for (const auto& op : d.operands)
            ops.push_back({{"tensor", op.tensor}, {"mode", op.mode + 1}, {"order", op.order},
                           {"complemented", op.complemented}});
        json layout = json::array();
        for (std::size_t l : d.layout)
            layout.push_back(l + 1);
        defs.push_back({{"name", d.name},
                        {"args", d.free_args},
                        {"quantifier", d.quantifier == Quantifier::Exists ? "exists" : "forall"},
                        {"variable", d.variable},
                        {"quantifier_arity", d.quantifier_arity()},
                        {"operands", ops},
                        {"layout", layout}});
    }

    json groups = json::array();
    for (const auto& g : p.root.groups) {
        json group = json::array();
        for (const auto& lit : g)
            group.push_back({{"ref", lit.ref}, {"negated", lit.negated}});
        groups.push_back(group);
    }
    json root = {{"kind", p.root.kind == NormalFormMatrix::Kind::Dnf ? "dnf" : "cnf"},
                 {"groups", groups},
                 {"expr", to_string(p.root)}};

    return {{"dedup", dedup}, {"definitions", defs}, {"root", root}};
}

json eval_result_to_json(const EvalResult& r)
{
    json out = {{"truth", r.truth},
                {"raw", r.raw},
                {"stats",
                 {{"contractions", r.stats.contractions},
                  {"peak_order", r.stats.peak_order},
                  {"wall_ms", r.stats.wall_ms}}}};
    if (!r.intermediates.empty()) {
        json inter = json::object();
        for (const auto& [name, t] : r.intermediates)
            inter[name] = tensor_to_json(t);
        out["intermediates"] = inter;
    }
    return out;
}

json bench_report_to_json(const BenchReport& r)
{
    json rows = json::array();
    for (const auto& row : r.rows)
        rows.push_back({{"n", row.n},
                        {"p_e", row.p_e},
                        {"method", to_string(row.method)},
                        {"mean_ms", row.mean_ms},
                        {"std_ms", row.std_ms},
                        {"runs", row.runs},
                        {"seed", row.seed}});
    return {{"rows", rows}, {"all_agree", r.all_agree}, {"instances", r.instances}};
}

std::string bench_report_to_csv(const BenchReport& r)
{
    std::ostringstream os;
    os << "n,p_e,method,mean_ms,std_ms,runs,seed\n";
    for (const auto& row : r.rows)
        os << row.n << ',' << row.p_e << ',' << to_string(row.method) << ',' << row.mean_ms << ',' << row.std_ms
           << ',' << row.runs << ',' << row.seed << '\n';
    return os.str();
}

} // namespace tensorlog
