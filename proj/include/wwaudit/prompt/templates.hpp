#pragma once

#include <filesystem>
#include <map>
#include <string>

namespace wwaudit::prompt {

/// A named set of prompt template parts with {{placeholder}} slots. The
/// version string is recorded in every transcript header so an audit can pin
/// exactly which wording produced it.
struct TemplateSet {
    std::string version;
    std::map<std::string, std::string> parts;

    /// Throws ConfigurationError if the part does not exist.
    const std::string& part(const std::string& name) const;

    /// The compiled-in default wording, version "v1". A reference copy lives
    /// under templates/v1/ in the repository.
    static const TemplateSet& builtin();

    /// Loads <name>.txt parts plus a VERSION file from a directory.
    static TemplateSet load_dir(const std::filesystem::path& dir);
    void write_dir(const std::filesystem::path& dir) const;
};

/// Expands {{name}} placeholders; unknown placeholders throw
/// ConfigurationError so template typos fail loudly.
std::string expand(const std::string& tmpl,
                   const std::map<std::string, std::string>& values);

} // namespace wwaudit::prompt
