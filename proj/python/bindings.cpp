// Python bindings. Values cross the boundary as JSON text in the same forms
// the CLI reads and writes; the package wrapper converts to and from dicts.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "selectlab/error.hpp"
#include "selectlab/fuzz.hpp"
#include "selectlab/serialize.hpp"

namespace py = pybind11;
using namespace selectlab;

namespace {

GameSpec game_of(const std::string& scenario_json, std::optional<int> horizon) {
  return build_game(scenario_from_json(Json::parse(scenario_json)), horizon);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  static py::exception<Error> error(m, "SelectlabError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error, e.what());
    } catch (const Json::exception& e) {
      py::set_error(error, (std::string("ParseError: ") + e.what()).c_str());
    }
  });

  m.def("corpus", [] {
    std::vector<std::string> out;
    for (const auto& s : builtin_corpus()) out.push_back(to_json(s).dump());
    return out;
  });

  m.def(
      "solve",
      [](const std::string& scenario, std::optional<int> horizon) {
        const auto g = game_of(scenario, horizon);
        py::gil_scoped_release release;
        return to_json(solve(g)).dump();
      },
      py::arg("scenario"), py::arg("horizon") = py::none());

  m.def(
      "synthesize",
      [](const std::string& kind, const std::string& scenario, std::optional<int> horizon,
         std::uint64_t budget) -> std::optional<std::string> {
        const auto g = game_of(scenario, horizon);
        if (kind == "pre-one") {
          if (auto s = find_predetermined_one(g)) return to_json(Strategy{*s}).dump();
          return std::nullopt;
        }
        if (kind == "markov-two") {
          if (auto s = find_markov_two(g, MarkovOptions{budget})) return to_json(Strategy{*s}).dump();
          return std::nullopt;
        }
        throw Error(ErrorCode::InvalidArgument, "kind must be pre-one or markov-two");
      },
      py::arg("kind"), py::arg("scenario"), py::arg("horizon") = py::none(),
      py::arg("budget") = MarkovOptions{}.node_budget);

  m.def(
      "verify",
      [](const std::string& scenario, const std::string& strategy, std::optional<int> horizon) {
        return to_json(verify(game_of(scenario, horizon), strategy_from_json(Json::parse(strategy)))).dump();
      },
      py::arg("scenario"), py::arg("strategy"), py::arg("horizon") = py::none());

  m.def("check_duality", [](const std::string& first, const std::string& second) {
    return to_json(check_duality(game_of(first, std::nullopt), game_of(second, std::nullopt))).dump();
  });

  m.def("cofinality", [](const std::string& pair) {
    return relative_cofinality(relpair_from_json(Json::parse(pair))).to_string();
  });

  m.def(
      "fuzz",
      [](std::uint64_t seed, int count, std::vector<std::string> suites) {
        FuzzOptions opts{seed, count, std::move(suites)};
        py::gil_scoped_release release;
        return to_json(run_fuzz(opts)).dump();
      },
      py::arg("seed"), py::arg("count"), py::arg("suites") = std::vector<std::string>{});

  m.def("suite_ids", [] { return suite_ids(); });
}
