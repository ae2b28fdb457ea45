namespace pncf {}
