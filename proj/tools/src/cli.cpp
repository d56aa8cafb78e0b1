#include "cli.hpp"

#include "commands.hpp"
#include "table.hpp"

#include "confnet/errors.hpp"

#include "CLI11.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>

namespace confnet::cli {

namespace {

using nlohmann::json;

constexpr const char* kVersion = "0.1.0";

std::string fnv1a64(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void write_file(const std::string& path, const std::string& bytes) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
    f << bytes;
    if (!f) throw std::runtime_error("failed writing '" + path + "'");
}

/// Config file: either a flat object of option values or a manifest
/// ({"command": ..., "params": {...}}).
std::map<std::string, std::string> read_config(const std::string& path, const Command& cmd) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open config '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw UsageError("config '" + path + "': " + e.what());
    }
    if (!j.is_object()) throw UsageError("config '" + path + "' must be a JSON object");
    if (j.contains("command") && j["command"] != cmd.name) {
        throw UsageError("config '" + path + "' is for command '" + j["command"].dump() + "', not '" + cmd.name + "'");
    }
    const json& body = j.contains("params") ? j["params"] : j;
    std::map<std::string, std::string> values;
    for (const auto& [key, value] : body.items()) {
        if (&body == &j && (key == "command" || key == "tool" || key == "version")) continue;
        const bool known = std::any_of(cmd.options.begin(), cmd.options.end(),
                                       [&](const OptionSpec& o) { return o.name == key; });
        if (!known) throw UsageError("config '" + path + "': unknown key '" + key + "' for " + cmd.name);
        values[key] = config_value_text(value);
    }
    return values;
}

struct Bound {
    const Command* cmd = nullptr;
    CLI::App* app = nullptr;
    std::map<std::string, std::string> text;
    std::map<std::string, bool> flags;
    std::map<std::string, CLI::Option*> opts;
};

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Full-connectivity probability of dense wireless networks in convex right prisms", "confnet"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    std::string output;
    std::string manifest;
    std::string config;
    std::vector<std::unique_ptr<Bound>> bound;
    for (const Command& cmd : commands()) {
        auto b = std::make_unique<Bound>();
        b->cmd = &cmd;
        b->app = app.add_subcommand(cmd.name, cmd.help);
        b->app->add_option("--output,-o", output, "write data here instead of stdout");
        b->app->add_option("--manifest", manifest, "manifest path (default <output>.manifest.json, else stderr)");
        b->app->add_option("--config", config, "JSON config or manifest; explicit flags win");
        for (const OptionSpec& o : cmd.options) {
            if (o.flag) {
                b->opts[o.name] = b->app->add_flag("--" + o.name, b->flags[o.name], o.help);
            } else {
                auto* opt = b->app->add_option("--" + o.name, b->text[o.name], o.help);
                if (!o.default_value.empty()) opt->description(o.help + " [" + o.default_value + "]");
                b->opts[o.name] = opt;
            }
        }
        bound.push_back(std::move(b));
    }

    try {
        std::vector<std::string> args;
        for (int i = argc - 1; i >= 1; --i) args.emplace_back(argv[i]);
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    Bound* active = nullptr;
    for (auto& b : bound) {
        if (b->app->parsed()) active = b.get();
    }
    const Command& cmd = *active->cmd;

    try {
        std::map<std::string, std::string> from_config;
        if (!config.empty()) from_config = read_config(config, cmd);
        std::map<std::string, std::string> resolved;
        for (const OptionSpec& o : cmd.options) {
            if (active->opts[o.name]->count() > 0) {
                resolved[o.name] = o.flag ? "true" : active->text[o.name];
            } else if (auto it = from_config.find(o.name); it != from_config.end()) {
                resolved[o.name] = it->second;
            } else {
                resolved[o.name] = o.default_value;
            }
        }
        const Params params(resolved);
        const CommandOutput result = cmd.run(params);

        if (output.empty()) {
            out << result.text;
            out.flush();
        } else {
            write_file(output, result.text);
        }

        json man = {{"tool", "confnet"},
                    {"version", kVersion},
                    {"command", cmd.name},
                    {"params", resolved},
                    {"output", {{"bytes", result.text.size()}, {"fnv1a64", fnv1a64(result.text)}}},
                    {"exit_code", result.exit_code}};
        const std::string man_text = dump(man);
        if (!manifest.empty()) {
            write_file(manifest, man_text);
        } else if (!output.empty()) {
            write_file(output + ".manifest.json", man_text);
        } else {
            err << man_text;
        }
        if (result.exit_code == kValidationFailed) err << "confnet: validation failed\n";
        return result.exit_code;
    } catch (const CapabilityError& e) {
        err << "confnet: capability error: " << e.what() << "\n";
        return kCapability;
    } catch (const std::logic_error& e) {
        err << "confnet: error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        err << "confnet: failure: " << e.what() << "\n";
        return kRuntimeFailure;
    }
}

}  // namespace confnet::cli
