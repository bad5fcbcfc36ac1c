#include <doctest.h>

#include <cmath>
#include <cstring>
#include <filesystem>
#include <string>
#include <vector>

#include "impd/impd.h"

namespace {

impd_instance* load_figure1() {
  impd_instance* inst = nullptr;
  REQUIRE(impd_instance_load(IMPD_DATA_DIR "/figure1.impd", &inst) == IMPD_OK);
  return inst;
}

impd_saa_params tiny_saa() {
  impd_saa_params p;
  impd_saa_params_default(&p);
  p.batch_size = 2;
  p.batch_count = 2;
  p.eval_size = 2;
  p.final_size = 2;
  return p;
}

}  // namespace

TEST_CASE("status codes and last error") {
  CHECK(std::strlen(impd_version()) > 0);
  impd_instance* inst = nullptr;
  CHECK(impd_instance_load("/nonexistent/x.impd", &inst) == IMPD_ERR_IO);
  CHECK(inst == nullptr);
  CHECK(std::string(impd_last_error()).find("/nonexistent/x.impd") != std::string::npos);

  const auto bad = std::filesystem::temp_directory_path() / "impd_capi_bad.impd";
  {
    FILE* f = std::fopen(bad.c_str(), "w");
    std::fputs("not an instance\n", f);
    std::fclose(f);
  }
  CHECK(impd_instance_load(bad.c_str(), &inst) == IMPD_ERR_PARSE);
  std::filesystem::remove(bad);

  impd_instance_spec spec;
  impd_instance_spec_default(&spec);
  spec.density = -1.0;
  CHECK(impd_instance_generate(&spec, &inst) == IMPD_ERR_INVALID_ARGUMENT);
  CHECK(impd_instance_generate(nullptr, &inst) == IMPD_ERR_INVALID_ARGUMENT);

  double delta = 0.0;
  CHECK(impd_compare_delta(0.0, 1.0, &delta) == IMPD_ERR_INVALID_ARGUMENT);
  CHECK(impd_compare_delta(8.0, 8.8, &delta) == IMPD_OK);
  CHECK(delta == doctest::Approx(10.0));
}

TEST_CASE("free functions accept null") {
  impd_instance_free(nullptr);
  impd_objective_free(nullptr);
  impd_result_free(nullptr);
  CHECK(impd_instance_name(nullptr, nullptr, 0) == 0);
  CHECK(impd_result_best(nullptr, nullptr, 0) == 0);
}

TEST_CASE("figure 1 through the C interface") {
  impd_instance* inst = load_figure1();
  impd_instance_info info;
  REQUIRE(impd_instance_get_info(inst, &info) == IMPD_OK);
  CHECK(info.node_count == 6);
  CHECK(info.arc_count == 9);
  CHECK(info.leader_budget == 2.0);
  CHECK(info.follower_budget == 1.0);
  CHECK(info.fixed_thresholds == 1);
  CHECK(info.max_activation_cost == 1.0);

  // Buffers are truncated but the full length is reported.
  const size_t len = impd_instance_name(inst, nullptr, 0);
  CHECK(len > 0);
  std::vector<char> name(len + 1);
  CHECK(impd_instance_name(inst, name.data(), name.size()) == len);
  CHECK(std::strlen(name.data()) == len);
  char small[3];
  CHECK(impd_instance_name(inst, small, sizeof small) == len);
  CHECK(std::strlen(small) == std::min<size_t>(2, len));

  const impd_saa_params params = tiny_saa();
  const int32_t ad[] = {0, 3};
  impd_saa_summary summary;
  int32_t response[4] = {-1, -1, -1, -1};
  REQUIRE(impd_saa_evaluate(inst, ad, 2, &params, &summary, response, 4) == IMPD_OK);
  CHECK(summary.upper_bound == 1.0);
  CHECK(summary.lower_bound == 1.0);
  CHECK(summary.response_len == 1);
  CHECK(response[0] == 0);  // deactivating A leaves only D

  const int32_t out_of_range[] = {0, 9};
  CHECK(impd_saa_evaluate(inst, out_of_range, 2, &params, &summary, nullptr, 0) == IMPD_ERR_INVALID_ARGUMENT);

  impd_objective* objective = nullptr;
  REQUIRE(impd_objective_create(inst, &params, &objective) == IMPD_OK);
  double value = 0.0;
  REQUIRE(impd_objective_value(objective, ad, 2, &value) == IMPD_OK);
  CHECK(value == 1.0);

  impd_result* result = nullptr;
  REQUIRE(impd_solve_enumeration(inst, objective, &result) == IMPD_OK);
  impd_result_summary rs;
  REQUIRE(impd_result_get_summary(result, &rs) == IMPD_OK);
  CHECK(rs.best_value == 2.0);
  CHECK(rs.evaluations == 15);
  int32_t best[2];
  CHECK(impd_result_best(result, best, 2) == 2);
  impd_result_free(result);

  impd_tsm_params tp;
  impd_tsm_params_default(&tp);
  tp.common.clock = IMPD_CLOCK_EVALS;
  tp.common.t_max = 100;
  tp.common.checkpoint_interval = 50;
  REQUIRE(impd_solve_tsm(inst, objective, &tp, &result) == IMPD_OK);
  REQUIRE(impd_result_get_summary(result, &rs) == IMPD_OK);
  CHECK(rs.best_value == 2.0);
  CHECK(rs.checkpoint_count == 2);
  double at = 0.0, cp = 0.0;
  CHECK(impd_result_checkpoint(result, 1, &at, &cp) == IMPD_OK);
  CHECK(at == 100.0);
  CHECK(cp == 2.0);
  CHECK(impd_result_checkpoint(result, 2, &at, &cp) == IMPD_ERR_INVALID_ARGUMENT);
  impd_trace_row row;
  if (rs.trace_count > 0) {
    CHECK(impd_result_trace_row(result, 0, &row) == IMPD_OK);
    CHECK(impd_result_trace_seed(result, 0, nullptr, 0) == 2);
  }
  CHECK(impd_result_trace_row(result, rs.trace_count, &row) == IMPD_ERR_INVALID_ARGUMENT);
  char reason[64];
  CHECK(impd_result_stop_reason(result, reason, sizeof reason) > 0);
  impd_result_free(result);

  impd_sam_params sp;
  impd_sam_params_default(&sp);
  sp.common.clock = IMPD_CLOCK_EVALS;
  sp.common.t_max = 100;
  sp.common.checkpoint_interval = 50;
  REQUIRE(impd_solve_sam(inst, objective, &sp, &result) == IMPD_OK);
  REQUIRE(impd_result_get_summary(result, &rs) == IMPD_OK);
  CHECK(rs.best_value == 2.0);
  CHECK(rs.move_counts[IMPD_MOVE_ADD] == 0);
  CHECK(rs.move_counts[IMPD_MOVE_DROP] == 0);
  impd_result_free(result);

  CHECK(impd_objective_evaluations(objective) > 0);
  impd_objective_free(objective);
  impd_instance_free(inst);
}

TEST_CASE("enumeration guard") {
  impd_instance_spec spec;
  impd_instance_spec_default(&spec);
  spec.node_count = 200;
  spec.density = 0.02;
  spec.leader_budget = 15;
  impd_instance* inst = nullptr;
  REQUIRE(impd_instance_generate(&spec, &inst) == IMPD_OK);
  double estimate = 0.0;
  CHECK(impd_enumeration_size_estimate(inst, &estimate) == IMPD_OK);
  CHECK(estimate > 5e6);  // saturates above the guard limit
  impd_saa_params params = tiny_saa();
  impd_objective* objective = nullptr;
  REQUIRE(impd_objective_create(inst, &params, &objective) == IMPD_OK);
  impd_result* result = nullptr;
  CHECK(impd_solve_enumeration(inst, objective, &result) == IMPD_ERR_GUARD);
  CHECK(result == nullptr);
  CHECK(std::strlen(impd_last_error()) > 0);
  impd_objective_free(objective);
  impd_instance_free(inst);
}

TEST_CASE("random seed sets and save/load") {
  impd_instance_spec spec;
  impd_instance_spec_default(&spec);
  impd_instance* inst = nullptr;
  REQUIRE(impd_instance_generate(&spec, &inst) == IMPD_OK);
  int32_t a[5], b[5];
  REQUIRE(impd_random_seed_set(inst, 5, 9, a) == IMPD_OK);
  REQUIRE(impd_random_seed_set(inst, 5, 9, b) == IMPD_OK);
  CHECK(std::equal(a, a + 5, b));
  CHECK(impd_random_seed_set(inst, 21, 9, nullptr) == IMPD_ERR_INVALID_ARGUMENT);

  const auto path = std::filesystem::temp_directory_path() / "impd_capi_rt.impd";
  REQUIRE(impd_instance_save(inst, path.c_str()) == IMPD_OK);
  impd_instance* back = nullptr;
  REQUIRE(impd_instance_load(path.c_str(), &back) == IMPD_OK);
  impd_instance_info x, y;
  impd_instance_get_info(inst, &x);
  impd_instance_get_info(back, &y);
  CHECK(x.arc_count == y.arc_count);
  CHECK(x.density == y.density);
  std::filesystem::remove(path);
  impd_instance_free(back);
  impd_instance_free(inst);
}
