#pragma once

#include <string>

#include "vnim/instance_io.hpp"
#include "vnim/rules.hpp"

namespace vnim::test {

// Instances are easier to read in the file format than as builder calls.
inline Position undirected(const std::string& body, const std::string& start,
                           const std::string& game = "vertexnim normal")
{
    return parse_instance("game " + game + "\ngraph undirected\n" + body + "\nstart " + start + "\n");
}

inline Position directed(const std::string& body, const std::string& start,
                         const std::string& game = "vertexnim normal")
{
    return parse_instance("game " + game + "\ngraph directed\n" + body + "\nstart " + start + "\n");
}

inline GameGraph ugraph(const std::vector<VertexSpec>& v, const std::vector<EdgeSpec>& e)
{
    return build_graph(Orientation::undirected, v, e);
}

inline GameGraph dgraph(const std::vector<VertexSpec>& v, const std::vector<EdgeSpec>& e)
{
    return build_graph(Orientation::directed, v, e);
}

} // namespace vnim::test
