#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <nlohmann/json.hpp>

#include "physector/campaign.hpp"
#include "physector/errors.hpp"
#include "physector/extraction.hpp"
#include "physector/io.hpp"
#include "physector/linalg.hpp"
#include "physector/measurement.hpp"
#include "physector/simulate.hpp"
#include "physector/states.hpp"

namespace py = pybind11;
using namespace pybind11::literals;
using namespace physector;

namespace {

std::string report_json_string(const ExtractionReport& report) {
    return to_json(report).dump(2);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Physical-sector extraction from commuting-measurement frequency data";

    py::register_exception<FovError>(m, "FovError");

    // linalg
    py::class_<SolveResult>(m, "SolveResult")
        .def_readonly("solution", &SolveResult::solution)
        .def_readonly("residual_inf", &SolveResult::residual_inf)
        .def_readonly("norm_sq", &SolveResult::norm_sq);
    m.def("pseudoinverse", &pseudoinverse, "m"_a, "tol"_a = 0.0,
          "Moore-Penrose pseudoinverse; singular values <= tol are dropped.");
    m.def("min_norm_solve", &min_norm_solve, "a"_a, "b"_a, "tol"_a = 0.0,
          "Minimum-norm least-squares solution of a x = b.");
    m.def("numerical_rank", &numerical_rank, "m"_a, "tol"_a = 0.0);

    // states
    py::class_<DiagonalState>(m, "DiagonalState")
        .def(py::init([](const Vector& diag) {
                 DiagonalState state;
                 state.diag = diag;
                 state.truncation_mass = std::max(0.0, 1.0 - diag.sum());
                 return state;
             }),
             "diag"_a)
        .def_readonly("diag", &DiagonalState::diag)
        .def_readonly("truncation_mass", &DiagonalState::truncation_mass)
        .def_property_readonly("n_levels", &DiagonalState::n_levels);
    m.def("even_cat_diagonal", &even_cat_diagonal, "alpha"_a, "n_levels"_a);
    m.def("fock_mixture", &fock_mixture, "components"_a, "n_levels"_a = 0);
    m.def("hybrid_pure_state", &hybrid_pure_state, "theta1"_a, "theta2"_a, "theta3"_a);

    // measurement
    py::class_<CommutingMeasurement>(m, "CommutingMeasurement")
        .def(py::init([](const Matrix& coefficients, bool complete) {
                 return CommutingMeasurement{coefficients, complete};
             }),
             "coefficients"_a, "complete"_a = false)
        .def_readonly("coefficients", &CommutingMeasurement::coefficients)
        .def_readonly("complete", &CommutingMeasurement::complete)
        .def_property_readonly("n_outcomes", &CommutingMeasurement::n_outcomes)
        .def_property_readonly("n_levels", &CommutingMeasurement::n_levels);
    m.def("validate", &validate, "m"_a, "Returns the list of violated invariants.");
    m.def("born_probabilities", &born_probabilities, "m"_a, "state"_a);
    m.def("identity_measurement", &identity_measurement, "n_levels"_a);
    m.def("random_measurement", &random_measurement, "n_levels"_a, "n_outcomes"_a, "seed"_a);
    m.def("subset", &subset, "m"_a, "outcome_indices"_a);

    // simulate
    py::class_<FrequencyRecord>(m, "FrequencyRecord")
        .def_readonly("f", &FrequencyRecord::f)
        .def_readonly("n_events", &FrequencyRecord::n_events)
        .def_readonly("seed", &FrequencyRecord::seed)
        .def_readonly("counts", &FrequencyRecord::counts);
    m.def("sample_frequencies", &sample_frequencies, "p"_a, "n_events"_a, "seed"_a,
          "Seeded multinomial counts; events outside p's support are dropped.");
    m.def("record_from_counts", &record_from_counts, "counts"_a, "n_events"_a = 0);
    m.def("restrict_record", &restrict_record, "record"_a, "outcome_indices"_a);

    // extraction
    py::class_<DecisionObservable>(m, "DecisionObservable")
        .def_readonly("y", &DecisionObservable::y)
        .def_readonly("target_subspace", &DecisionObservable::target_subspace)
        .def_readonly("fov", &DecisionObservable::fov)
        .def_readonly("achieved_diag", &DecisionObservable::achieved_diag)
        .def_readonly("residual_inf", &DecisionObservable::residual_inf)
        .def_readonly("sum_y_sq", &DecisionObservable::sum_y_sq);
    py::class_<DecisionStatistic>(m, "DecisionStatistic")
        .def_readonly("w", &DecisionStatistic::w)
        .def_readonly("variance", &DecisionStatistic::variance)
        .def_readonly("b_sub", &DecisionStatistic::b_sub)
        .def_readonly("epsilon", &DecisionStatistic::epsilon)
        .def_readonly("n_events", &DecisionStatistic::n_events);
    py::enum_<ExtractionStatus>(m, "ExtractionStatus")
        .value("accepted", ExtractionStatus::accepted)
        .value("fov_exhausted", ExtractionStatus::fov_exhausted);
    py::enum_<LevelOrdering>(m, "LevelOrdering")
        .value("hint", LevelOrdering::hint)
        .value("natural", LevelOrdering::natural);
    py::class_<ExtractionStep>(m, "ExtractionStep")
        .def_readonly("k", &ExtractionStep::k)
        .def_readonly("subspace", &ExtractionStep::subspace)
        .def_readonly("mean_b_sub", &ExtractionStep::mean_b_sub)
        .def_readonly("std_b_sub", &ExtractionStep::std_b_sub)
        .def_readonly("mean_w", &ExtractionStep::mean_w)
        .def_readonly("mean_variance", &ExtractionStep::mean_variance)
        .def_readonly("b_sub_per_set", &ExtractionStep::b_sub_per_set);
    py::class_<ExtractionReport>(m, "ExtractionReport")
        .def_readonly("sorted_order", &ExtractionReport::sorted_order)
        .def_readonly("mean_hint", &ExtractionReport::mean_hint)
        .def_readonly("steps", &ExtractionReport::steps)
        .def_readonly("alpha", &ExtractionReport::alpha)
        .def_readonly("extracted_sector", &ExtractionReport::extracted_sector)
        .def_readonly("status", &ExtractionReport::status)
        .def_readonly("warnings", &ExtractionReport::warnings)
        .def_property_readonly("d_phys", &ExtractionReport::d_phys)
        .def("to_json", &report_json_string)
        .def("to_csv", &report_to_csv);

    m.def(
        "diagonal_hint",
        [](const CommutingMeasurement& m_, const FrequencyRecord& record) {
            return diagonal_hint(m_, record);
        },
        "m"_a, "record"_a);
    m.def(
        "diagonal_hint",
        [](const CommutingMeasurement& m_, const Vector& f) { return diagonal_hint(m_, f); },
        "m"_a, "f"_a);
    m.def("build_decision_observable", &build_decision_observable, "m"_a, "sub"_a, "fov"_a,
          "tol"_a = kObservableTol);
    m.def(
        "decision_statistic",
        [](const DecisionObservable& obs, const FrequencyRecord& record) {
            return decision_statistic(obs, record);
        },
        "obs"_a, "record"_a);
    m.def(
        "decision_statistic",
        [](const DecisionObservable& obs, const Vector& f, long long n_events) {
            return decision_statistic(obs, f, n_events);
        },
        "obs"_a, "f"_a, "n_events"_a);
    m.def("hoeffding_sample_size", &hoeffding_sample_size, "epsilon"_a, "alpha"_a,
          "sum_y_sq"_a,
          "Events needed to suppress fluctuation below epsilon at alpha significance.");
    m.def(
        "run_psep",
        [](const std::vector<CommutingMeasurement>& sets,
           const std::vector<FrequencyRecord>& data, double alpha, const Sector& fov,
           LevelOrdering ordering, double observable_tol, int n_threads) {
            PsepOptions options;
            options.alpha = alpha;
            options.fov = fov;
            options.ordering = ordering;
            options.observable_tol = observable_tol;
            options.n_threads = n_threads;
            return run_psep(sets, data, options);
        },
        "sets"_a, "data"_a, "alpha"_a = 0.05, "fov"_a = Sector{},
        "ordering"_a = LevelOrdering::hint, "observable_tol"_a = kObservableTol,
        "n_threads"_a = 0,
        "Iterative physical-sector extraction over matching (measurement, data) pairs.");

    // campaign
    py::enum_<DataMode>(m, "DataMode")
        .value("fresh", DataMode::fresh)
        .value("shared_subsets", DataMode::shared_subsets);
    py::class_<CampaignConfig>(m, "CampaignConfig")
        .def(py::init<>())
        .def_readwrite("state", &CampaignConfig::state)
        .def_readwrite("fov_dim", &CampaignConfig::fov_dim)
        .def_readwrite("n_sets", &CampaignConfig::n_sets)
        .def_readwrite("outcomes_per_set", &CampaignConfig::outcomes_per_set)
        .def_readwrite("total_outcomes", &CampaignConfig::total_outcomes)
        .def_readwrite("n_events", &CampaignConfig::n_events)
        .def_readwrite("alpha", &CampaignConfig::alpha)
        .def_readwrite("seed", &CampaignConfig::seed)
        .def_readwrite("data_mode", &CampaignConfig::data_mode)
        .def_readwrite("order", &CampaignConfig::order)
        .def_readwrite("identity_set", &CampaignConfig::identity_set)
        .def_readwrite("out_dir", &CampaignConfig::out_dir);
    py::class_<CampaignResult>(m, "CampaignResult")
        .def_readonly("report", &CampaignResult::report)
        .def_readonly("sets", &CampaignResult::sets)
        .def_readonly("data", &CampaignResult::data);
    m.def("demo_config", &demo_config, "name"_a);
    m.def("resolve_state", &resolve_state, "spec"_a, "n_levels"_a = 0);
    m.def("run_campaign", &run_campaign, "config"_a,
          py::call_guard<py::gil_scoped_release>());
    m.def("shared_subset_analysis", &shared_subset_analysis, "base"_a, "record"_a,
          "n_sets"_a, "outcomes_per_set"_a, "seed"_a);
}
