//! Home of the `acceptance` test target (tests/acceptance.rs), kept in its
//! own package so it runs after every other suite in the workspace.
