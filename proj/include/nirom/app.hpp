// Copyright 2026 The nirom Authors
// SPDX-License-Identifier: Apache-2.0

///
/// \file app.hpp
///
/// The command layer behind the `nirom` executable. Every command returns a
/// process exit code and never throws:
///
///   0 ok, 2 configuration error, 3 I/O error, 4 numerical failure.
///
#ifndef NIROM_APP_HPP
#define NIROM_APP_HPP

#include <iosfwd>
#include <optional>
#include <set>
#include <string>

#include <nirom/io.hpp>
#include <nirom/pipeline.hpp>
#include <nirom/synthgen.hpp>

namespace nirom
{

enum ExitCode : int
{
    kExitOk = 0,
    kExitConfig = 2,
    kExitIo = 3,
    kExitNumerical = 4,
};

/// Keys accepted by fit and generate configs.
const std::set<std::string>& fit_config_keys();
const std::set<std::string>& generate_config_keys();

/// Throws ParseError or InvalidArgument on bad values.
FitConfig fit_config_from(const Config& cfg);
PlumeConfig plume_config_from(const Config& cfg);

/// Data file plus `<output>.truth.json` with the generator's ground truth.
int cmd_generate(const std::string& config_path, const std::string& output_path, std::ostream& log);

/// Model file plus a JSON report (default `<model>.report.json`). An empty
/// config path uses the defaults.
int cmd_fit(const std::string& data_path, const std::string& config_path,
            const std::string& model_path, const std::string& report_path, std::ostream& log);

struct SimulateInput
{
    enum class Kind
    {
        File,
        Impulse,
        Step
    };
    Kind kind = Kind::Step;
    std::string path; ///< for File
    Index N = 0;      ///< for Impulse and Step
};

/// Writes the model output as a data CSV with t_k = k h, k = 1..N, unless
/// the input file supplies its own times.
int cmd_simulate(const std::string& model_path, const SimulateInput& input,
                 const std::string& output_path, std::ostream& log);

/// JSON report of the mismatch statistics; with a plots directory also
/// mismatch.csv, relative_error.csv and snapshots.csv.
int cmd_evaluate(const std::string& reference_path, const std::string& predicted_path,
                 const std::string& report_path, const std::optional<std::string>& plots_dir,
                 std::ostream& log);

} // namespace nirom

#endif /* NIROM_APP_HPP */
