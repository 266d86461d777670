// Named run configurations that regenerate the data behind each figure.

#ifndef CPT_PRESETS_HPP
#define CPT_PRESETS_HPP

#include <string>
#include <vector>

#include <cpt/config.hpp>

namespace cpt {

std::vector<std::string> preset_names();

/// Preset configuration including its `command` key. Throws Error(Config)
/// for an unknown name.
Config preset(const std::string& name);

}

#endif
