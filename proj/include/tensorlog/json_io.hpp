#pragma once

#include "tensorlog/compiler.hpp"
#include "tensorlog/datalog.hpp"
#include "tensorlog/evaluator.hpp"
#include "tensorlog/tensor.hpp"

#include <json.hpp>

#include <string>

namespace tensorlog {

/// Nested arrays, outermost index first; a scalar is a bare number.
nlohmann::json tensor_to_json(const Tensor& t);

/// {"dedup": [...], "definitions": [...], "root": {...}}. Operand modes are
/// 1-based, matching the x_{1,j} notation.
nlohmann::json program_to_json(const TensorProgram& p);

/// {"truth": 0|1, "raw": float, "stats": {...}} plus "intermediates" when kept.
nlohmann::json eval_result_to_json(const EvalResult& r);

nlohmann::json bench_report_to_json(const BenchReport& r);
/// Header n,p_e,method,mean_ms,std_ms,runs,seed.
std::string bench_report_to_csv(const BenchReport& r);

} // namespace tensorlog
