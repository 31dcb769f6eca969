// Copyright 2026 The fpsens Authors
// SPDX-License-Identifier: Apache-2.0
//! Command-line driver: fpsens --config run.cfg --output out --mode sens
#include <iostream>
#include <optional>
#include <string>
#include <string_view>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include "fpsens/error.hpp"
#include "fpsens/experiment.hpp"
#include "fpsens/run_config.hpp"

namespace
{
int report_error(std::string_view code, std::string const& message)
{
    nlohmann::ordered_json j;
    j["error"] = code;
    j["message"] = message;
    std::cerr << j.dump() << '\n';
    return 2;
}
}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Fokker-Planck P_N electron transport with adjoint "
                 "sensitivities"};
    std::string config_path;
    std::string output_dir;
    std::string mode;
    bool batch = false;
    app.add_option("--config", config_path, "key = value run configuration")
        ->check(CLI::ExistingFile);
    app.add_option("--output", output_dir, "output directory");
    app.add_option("--mode", mode, "forward|sens|verify")
        ->check(CLI::IsMember({"forward", "sens", "verify"}));
    app.add_flag("--table1", batch,
                 "sweep gaussian beams at 6, 9, 12 and 16 MeV");

    try
    {
        app.parse(argc, argv);
    }
    catch (CLI::CallForHelp const& e)
    {
        return app.exit(e);
    }
    catch (CLI::CallForVersion const& e)
    {
        return app.exit(e);
    }
    catch (CLI::ParseError const& e)
    {
        return report_error("invalid_argument", e.what());
    }

    try
    {
        fpsens::RunConfig config;
        if (!config_path.empty())
            config = fpsens::load_config(config_path);
        if (!output_dir.empty())
            config.output_dir = output_dir;
        if (!mode.empty())
            config.mode = fpsens::parse_run_mode(mode);

        if (batch)
        {
            auto rows = fpsens::table1(config);
            for (auto const& r : rows)
            {
                std::cout << fmt::format(
                    "beam {:>5g} MeV  x_norm {:.6f}  sup rel T {:.4e}  sup "
                    "rel S {:.4e}\n",
                    r.beam_energy_mev, r.x_norm, r.sup_norm_rel_t,
                    r.sup_norm_rel_s);
            }
            return 0;
        }

        auto result = fpsens::run(config);
        for (auto const& w : result.warnings)
            std::cerr << "warning: " << w << '\n';
        auto const& r = result.report;
        std::cout << fmt::format(
            "x_bar {:.8g}  D_bar {:.8g}  x_norm {:.8g}  balance {:.3e}\n",
            r.x_bar, r.d_bar, r.x_norm, r.balance_residual);
        if (result.rel_s && result.rel_t)
            std::cout << fmt::format("sup rel S {:.4e}  sup rel T {:.4e}\n",
                                     result.rel_s->sup_norm,
                                     result.rel_t->sup_norm);
        if (result.fd_s && result.fd_t)
            std::cout << fmt::format(
                "fd rel err S {:.4e}  T {:.4e}\n",
                result.fd_s->rel_error_linf, result.fd_t->rel_error_linf);
        std::cout << "wrote " << result.output_dir.string() << '\n';
        return 0;
    }
    catch (fpsens::Error const& e)
    {
        return report_error(fpsens::to_string(e.code()), e.what());
    }
    catch (std::exception const& e)
    {
        return report_error("internal_error", e.what());
    }
}
