#ifndef MOELA_FEATURE_LIST_HPP
#define MOELA_FEATURE_LIST_HPP

#include <string>
#include <vector>

namespace moela {

// Ordered (name, value) pairs emitted by a feature group.
struct FeatureList {
    std::vector<std::string> names;
    std::vector<double> values;

    void add(std::string name, double value)
    {
        names.push_back(std::move(name));
        values.push_back(value);
    }

    void append(const FeatureList& other, const std::string& prefix = {})
    {
        for (std::size_t i = 0; i < other.size(); ++i) {
            add(prefix + other.names[i], other.values[i]);
        }
    }

    std::size_t size() const noexcept { return names.size(); }
};

} // namespace moela

#endif
