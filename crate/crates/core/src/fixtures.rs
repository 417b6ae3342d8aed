//! Small reference networks in edge-list form.

/// Six nodes, eight arcs, source 1, sink 6.
pub const BENCHMARK: &str = "\
6 8 1 6
1 2
1 3
2 4
2 5
3 5
4 5
4 6
5 6
";

/// Two disjoint two-arc routes from 1 to 4.
pub const DIAMOND: &str = "\
4 4 1 4
1 2
1 3
2 4
3 4
";

pub const SINGLE_EDGE: &str = "\
2 1 1 2
1 2
";

/// Source and sink in different components.
pub const DISCONNECTED: &str = "\
4 2 1 4
1 2
3 4
";
