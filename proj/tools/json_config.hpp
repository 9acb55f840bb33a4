#pragma once

#include <istream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

namespace vsddpm::cli {

/// Reads CLI options from a JSON object. Nested objects name subcommands;
/// arrays become comma-joined values so shape-like options keep their
/// command-line spelling.
class JsonConfig : public CLI::Config {
public:
    std::string to_config(const CLI::App* app, bool default_also, bool, std::string) const override {
        nlohmann::json j = nlohmann::json::object();
        for (const CLI::Option* opt : app->get_options()) {
            if (opt->get_lnames().empty() || !opt->get_configurable()) {
                continue;
            }
            const std::string name = opt->get_lnames()[0];
            if (opt->count() > 0) {
                j[name] = opt->as<std::string>();
            } else if (default_also && !opt->get_default_str().empty()) {
                j[name] = opt->get_default_str();
            }
        }
        return j.dump(2);
    }

    std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
        nlohmann::json j;
        try {
            input >> j;
        } catch (const nlohmann::json::exception& e) {
            throw CLI::ConversionError("config", std::string("invalid JSON config: ") + e.what());
        }
        if (!j.is_object()) {
            throw CLI::ConversionError("config", "JSON config must be an object");
        }
        std::vector<CLI::ConfigItem> items;
        flatten(j, {}, items);
        return items;
    }

private:
    static std::string scalar(const nlohmann::json& v) {
        if (v.is_string()) {
            return v.get<std::string>();
        }
        if (v.is_boolean()) {
            return v.get<bool>() ? "true" : "false";
        }
        return v.dump();
    }

    static void flatten(const nlohmann::json& j, const std::vector<std::string>& parents,
                        std::vector<CLI::ConfigItem>& items) {
        for (const auto& [key, value] : j.items()) {
            if (value.is_object()) {
                auto sub = parents;
                sub.push_back(key);
                // Entering a section marks the subcommand as used.
                CLI::ConfigItem open;
                open.parents = parents;
                open.name = "++";
                open.parents.push_back(key);
                items.push_back(open);
                flatten(value, sub, items);
                CLI::ConfigItem close;
                close.parents = sub;
                close.name = "--";
                items.push_back(close);
                continue;
            }
            CLI::ConfigItem item;
            item.parents = parents;
            item.name = key;
            if (value.is_array()) {
                std::string joined;
                for (const auto& e : value) {
                    joined += (joined.empty() ? "" : ",") + scalar(e);
                }
                item.inputs = {joined};
            } else {
                item.inputs = {scalar(value)};
            }
            items.push_back(std::move(item));
        }
    }
};

}  // namespace vsddpm::cli
