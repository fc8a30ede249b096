#include "hadamard/hadamard.h"

#include <cmath>
#include <cstring>
#include <string>
#include <variant>
#include <vector>

#include "hadamard/config.hpp"
#include "hadamard/csv.hpp"
#include "hadamard/euclidean.hpp"
#include "hadamard/frechet.hpp"
#include "hadamard/geometry.hpp"
#include "hadamard/harness.hpp"
#include "hadamard/means.hpp"
#include "hadamard/open_book.hpp"
#include "hadamard/spd.hpp"
#include "hadamard/svg.hpp"

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& message) { g_last_error = message; }

template <class Fn>
hm_status guarded(Fn&& fn) noexcept {
  try {
    fn();
    g_last_error.clear();
    return HM_OK;
  } catch (const hadamard::CapacityError& e) {
    set_error(e.what());
    return HM_ERR_CAPACITY;
  } catch (const hadamard::ConvergenceError& e) {
    set_error(e.what());
    return HM_ERR_CONVERGENCE;
  } catch (const hadamard::IoError& e) {
    set_error(e.what());
    return HM_ERR_IO;
  } catch (const hadamard::NumericError& e) {
    set_error(e.what());
    return HM_ERR_NUMERIC;
  } catch (const std::invalid_argument& e) {
    set_error(e.what());
    return HM_ERR_INVALID_ARGUMENT;
  } catch (const std::exception& e) {
    set_error(e.what());
    return HM_ERR_NUMERIC;
  }
}

void require(bool condition, const char* message) {
  if (!condition) throw std::invalid_argument(message);
}

using SpaceVariant =
    std::variant<hadamard::EuclideanSpace, hadamard::SpdSpace, hadamard::BookSpace>;

int point_size_of(const SpaceVariant& space) {
  return std::visit(
      [](const auto& s) -> int {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, hadamard::EuclideanSpace>) {
          return s.dim();
        } else if constexpr (std::is_same_v<S, hadamard::SpdSpace>) {
          return s.dim() * s.dim();
        } else {
          return 2 + s.spine_dim();
        }
      },
      space);
}

Eigen::VectorXd decode(const hadamard::EuclideanSpace& space, const double* in) {
  return Eigen::Map<const Eigen::VectorXd>(in, space.dim());
}

Eigen::MatrixXd decode(const hadamard::SpdSpace& space, const double* in) {
  const int d = space.dim();
  Eigen::MatrixXd m(d, d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) m(i, j) = in[i * d + j];
  }
  return m;
}

hadamard::BookPoint decode(const hadamard::BookSpace& space, const double* in) {
  const double sheet_raw = in[0];
  const double rounded = std::round(sheet_raw);
  if (std::abs(sheet_raw - rounded) > 1e-9) {
    throw std::invalid_argument("book point: sheet entry must be integral, got " +
                                std::to_string(sheet_raw));
  }
  Eigen::VectorXd spine = Eigen::Map<const Eigen::VectorXd>(in + 2, space.spine_dim());
  return space.make_point(static_cast<int>(rounded), in[1], std::move(spine));
}

void encode(const hadamard::EuclideanSpace& space, const Eigen::VectorXd& p, double* out) {
  Eigen::Map<Eigen::VectorXd>(out, space.dim()) = p;
}

void encode(const hadamard::SpdSpace& space, const Eigen::MatrixXd& p, double* out) {
  const int d = space.dim();
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) out[i * d + j] = p(i, j);
  }
}

void encode(const hadamard::BookSpace& space, const hadamard::BookPoint& p, double* out) {
  out[0] = static_cast<double>(p.sheet);
  out[1] = p.t;
  Eigen::Map<Eigen::VectorXd>(out + 2, space.spine_dim()) = p.spine;
}

using PointsVariant = std::variant<std::vector<Eigen::VectorXd>, std::vector<Eigen::MatrixXd>,
                                   std::vector<hadamard::BookPoint>>;

template <class S>
struct points_of;
template <>
struct points_of<hadamard::EuclideanSpace> {
  using type = std::vector<Eigen::VectorXd>;
};
template <>
struct points_of<hadamard::SpdSpace> {
  using type = std::vector<Eigen::MatrixXd>;
};
template <>
struct points_of<hadamard::BookSpace> {
  using type = std::vector<hadamard::BookPoint>;
};

}  // namespace

struct hm_space {
  SpaceVariant impl;
};

struct hm_points {
  SpaceVariant space;
  PointsVariant data;
};

struct hm_config {
  hadamard::ExperimentConfig impl;
};

struct hm_result {
  hadamard::RunResult impl;
};

namespace {

// Calls fn(space, points_vector) with matching static types.
template <class Fn>
void with_typed(const hm_space* space, const hm_points* points, Fn&& fn) {
  require(space != nullptr, "space handle is null");
  require(points != nullptr, "points handle is null");
  require(space->impl.index() == points->data.index(),
          "points buffer belongs to a different kind of space");
  std::visit(
      [&](const auto& s) {
        using S = std::decay_t<decltype(s)>;
        fn(s, std::get<typename points_of<S>::type>(points->data));
      },
      space->impl);
}

hm_space* make_space(SpaceVariant&& impl) { return new hm_space{std::move(impl)}; }

}  // namespace

extern "C" {

const char* hm_last_error(void) { return g_last_error.c_str(); }

hm_space* hm_space_euclidean(int dim) {
  hm_space* out = nullptr;
  guarded([&] { out = make_space(hadamard::EuclideanSpace(dim)); });
  return out;
}

hm_space* hm_space_spd(int dim) {
  hm_space* out = nullptr;
  guarded([&] { out = make_space(hadamard::SpdSpace(dim)); });
  return out;
}

hm_space* hm_space_open_book(int sheets, int spine_dim) {
  hm_space* out = nullptr;
  guarded([&] { out = make_space(hadamard::BookSpace(sheets, spine_dim)); });
  return out;
}

void hm_space_free(hm_space* space) { delete space; }

int hm_space_point_size(const hm_space* space) {
  return space == nullptr ? 0 : point_size_of(space->impl);
}

hm_status hm_space_distance(const hm_space* space, const double* p, const double* q,
                            double* out) {
  return guarded([&] {
    require(space && p && q && out, "hm_space_distance: null argument");
    *out = std::visit([&](const auto& s) { return s.distance(decode(s, p), decode(s, q)); },
                      space->impl);
  });
}

hm_status hm_space_interpolate(const hm_space* space, const double* p, const double* q, double t,
                               double* out) {
  return guarded([&] {
    require(space && p && q && out, "hm_space_interpolate: null argument");
    std::visit([&](const auto& s) { encode(s, s.interpolate(decode(s, p), decode(s, q), t), out); },
               space->impl);
  });
}

hm_points* hm_points_new(const hm_space* space) {
  hm_points* out = nullptr;
  guarded([&] {
    require(space != nullptr, "hm_points_new: null space");
    out = new hm_points{space->impl, {}};
    std::visit(
        [&](const auto& s) {
          using S = std::decay_t<decltype(s)>;
          out->data = typename points_of<S>::type{};
        },
        space->impl);
  });
  return out;
}

hm_status hm_points_push(hm_points* points, const double* coords) {
  return guarded([&] {
    require(points && coords, "hm_points_push: null argument");
    std::visit(
        [&](const auto& s) {
          using S = std::decay_t<decltype(s)>;
          auto decoded = decode(s, coords);
          if constexpr (std::is_same_v<S, hadamard::SpdSpace>) {
            hadamard::validate_spd(decoded);
          }
          std::get<typename points_of<S>::type>(points->data).push_back(std::move(decoded));
        },
        points->space);
  });
}

int64_t hm_points_size(const hm_points* points) {
  if (points == nullptr) return 0;
  return std::visit([](const auto& v) { return static_cast<int64_t>(v.size()); }, points->data);
}

hm_status hm_points_get(const hm_points* points, int64_t index, double* out) {
  return guarded([&] {
    require(points && out, "hm_points_get: null argument");
    std::visit(
        [&](const auto& s) {
          using S = std::decay_t<decltype(s)>;
          const auto& vec = std::get<typename points_of<S>::type>(points->data);
          require(index >= 0 && index < static_cast<int64_t>(vec.size()),
                  "hm_points_get: index out of range");
          encode(s, vec[static_cast<std::size_t>(index)], out);
        },
        points->space);
  });
}

void hm_points_free(hm_points* points) { delete points; }

hm_status hm_mean_inductive(const hm_space* space, const hm_points* points, double* out) {
  return guarded([&] {
    require(out != nullptr, "hm_mean_inductive: null output");
    with_typed(space, points, [&](const auto& s, const auto& pts) {
      const hadamard::TraceGrid grid{static_cast<std::int64_t>(pts.size())};
      encode(s, hadamard::inductive_mean(s, std::span(pts), grid).final_estimate(), out);
    });
  });
}

hm_status hm_mean_hansen(const hm_space* space, const hm_points* points, double* out) {
  return guarded([&] {
    require(out != nullptr, "hm_mean_hansen: null output");
    with_typed(space, points, [&](const auto& s, const auto& pts) {
      const hadamard::TraceGrid grid{static_cast<std::int64_t>(pts.size())};
      encode(s, hadamard::hansen_mean(s, std::span(pts), grid).final_estimate(), out);
    });
  });
}

hm_status hm_mean_es_sahib(const hm_space* space, const hm_points* points, double tol,
                           int max_rounds, double* out) {
  return guarded([&] {
    require(out != nullptr, "hm_mean_es_sahib: null output");
    with_typed(space, points, [&](const auto& s, const auto& pts) {
      encode(s, hadamard::es_sahib_mean(s, std::span(pts), tol, max_rounds), out);
    });
  });
}

hm_status hm_mean_resampled(const hm_space* space, const hm_points* points, uint64_t seed,
                            double* out) {
  return guarded([&] {
    require(out != nullptr, "hm_mean_resampled: null output");
    with_typed(space, points, [&](const auto& s, const auto& pts) {
      const hadamard::TraceGrid grid{static_cast<std::int64_t>(pts.size())};
      encode(s, hadamard::resampled_mean(s, std::span(pts), seed, grid).final_estimate(), out);
    });
  });
}

hm_status hm_mean_lim_palfia(const hm_space* space, const hm_points* points,
                             const double* weights, int64_t total_steps, double* out,
                             double* certificate) {
  return guarded([&] {
    require(out != nullptr, "hm_mean_lim_palfia: null output");
    with_typed(space, points, [&](const auto& s, const auto& pts) {
      const std::span<const double> w =
          weights == nullptr ? std::span<const double>{}
                             : std::span<const double>(weights, pts.size());
      auto lp = hadamard::lim_palfia(s, std::span(pts), w, total_steps);
      encode(s, lp.estimate, out);
      if (certificate != nullptr) *certificate = lp.error_certificate();
    });
  });
}

hm_status hm_frechet_oracle(const hm_space* space, const hm_points* points,
                            const double* weights, double* out) {
  return guarded([&] {
    require(out != nullptr, "hm_frechet_oracle: null output");
    with_typed(space, points, [&](const auto& s, const auto& pts) {
      std::vector<double> uniform;
      std::span<const double> w;
      if (weights == nullptr) {
        uniform.assign(pts.size(), 1.0 / static_cast<double>(pts.size()));
        w = uniform;
      } else {
        w = std::span<const double>(weights, pts.size());
      }
      encode(s, hadamard::frechet_oracle(s, std::span(pts), w), out);
    });
  });
}

hm_status hm_check_space(const hm_space* space, int64_t cases, uint64_t seed,
                         double* out_violations) {
  return guarded([&] {
    require(space && out_violations, "hm_check_space: null argument");
    hadamard::SplitMix64 rng(seed);
    const hadamard::GeometryReport report = std::visit(
        [&](const auto& s) {
          return hadamard::check_metric_axioms(
              s, [&](hadamard::SplitMix64& r) { return s.random_point(r); }, cases, rng);
        },
        space->impl);
    out_violations[0] = report.symmetry;
    out_violations[1] = report.identity;
    out_violations[2] = report.triangle;
    out_violations[3] = report.endpoint;
    out_violations[4] = report.speed;
    out_violations[5] = report.npc;
    out_violations[6] = report.midpoint;
  });
}

hm_config* hm_config_new(void) { return new hm_config{}; }

void hm_config_free(hm_config* config) { delete config; }

hm_status hm_config_set(hm_config* config, const char* key, const char* value) {
  return guarded([&] {
    require(config && key && value, "hm_config_set: null argument");
    hadamard::apply_config_entry(config->impl, key, value);
  });
}

hm_status hm_config_load(hm_config* config, const char* path) {
  return guarded([&] {
    require(config && path, "hm_config_load: null argument");
    config->impl = hadamard::load_config(path);
  });
}

hm_status hm_config_save(const hm_config* config, const char* path) {
  return guarded([&] {
    require(config && path, "hm_config_save: null argument");
    hadamard::save_config(config->impl, path);
  });
}

hm_status hm_experiment_run(const hm_config* config, hm_result** out) {
  return guarded([&] {
    require(config && out, "hm_experiment_run: null argument");
    *out = new hm_result{hadamard::run_experiment(config->impl)};
  });
}

int64_t hm_result_rows(const hm_result* result) {
  return result == nullptr ? 0 : static_cast<int64_t>(result->impl.rows.size());
}

hm_status hm_result_row(const hm_result* result, int64_t index, const char** experiment,
                        const char** estimator, int64_t* replication, int64_t* n,
                        const char** metric, double* value) {
  return guarded([&] {
    require(result != nullptr, "hm_result_row: null result");
    require(index >= 0 && index < static_cast<int64_t>(result->impl.rows.size()),
            "hm_result_row: index out of range");
    const hadamard::RunRow& row = result->impl.rows[static_cast<std::size_t>(index)];
    if (experiment != nullptr) *experiment = hadamard::experiment_name(row.experiment);
    if (estimator != nullptr) *estimator = hadamard::estimator_name(row.estimator);
    if (replication != nullptr) *replication = row.replication;
    if (n != nullptr) *n = row.n;
    if (metric != nullptr) *metric = hadamard::metric_name(row.metric);
    if (value != nullptr) *value = row.value;
  });
}

hm_status hm_result_write_csv(const hm_result* result, const char* path) {
  return guarded([&] {
    require(result && path, "hm_result_write_csv: null argument");
    hadamard::write_csv(result->impl, path);
  });
}

hm_status hm_result_write_svg(const hm_result* result, const char* dir) {
  return guarded([&] {
    require(result && dir, "hm_result_write_svg: null argument");
    hadamard::write_svg_charts(result->impl, dir);
  });
}

hm_status hm_result_write_config_echo(const hm_result* result, const char* path) {
  return guarded([&] {
    require(result && path, "hm_result_write_config_echo: null argument");
    hadamard::save_config(result->impl.config_echo, path);
  });
}

void hm_result_free(hm_result* result) { delete result; }

hm_status hm_bound_check(const char* generator, const int64_t* n_grid, int n_grid_len,
                         int replications, uint64_t seed, double* empirical, double* half_width,
                         double* bound, int* pass, int* all_pass) {
  return guarded([&] {
    require(generator && n_grid && n_grid_len > 0, "hm_bound_check: null or empty grid");
    hadamard::BoundGenerator gen;
    if (std::strcmp(generator, "euclidean-hetero") == 0) {
      gen = hadamard::BoundGenerator::kEuclideanHetero;
    } else if (std::strcmp(generator, "spd-commuting-hetero") == 0) {
      gen = hadamard::BoundGenerator::kSpdCommutingHetero;
    } else {
      throw std::invalid_argument(std::string("unknown bound generator '") + generator + "'");
    }
    std::vector<std::int64_t> grid(n_grid, n_grid + n_grid_len);
    const auto report = hadamard::monte_carlo_bound_check(gen, grid, replications, seed);
    for (int i = 0; i < n_grid_len; ++i) {
      const auto& row = report.rows[static_cast<std::size_t>(i)];
      if (empirical != nullptr) empirical[i] = row.empirical;
      if (half_width != nullptr) half_width[i] = row.half_width;
      if (bound != nullptr) bound[i] = row.bound;
      if (pass != nullptr) pass[i] = row.pass ? 1 : 0;
    }
    if (all_pass != nullptr) *all_pass = report.pass ? 1 : 0;
  });
}

}  // extern "C"
