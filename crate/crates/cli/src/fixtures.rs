//! The example posets and complexes, as files.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

/// `(file name, contents)` of every fixture, in a fixed order.
pub const FIXTURES: &[(&str, &str)] = &[
    (
        "ex1.poset",
        "# eight elements; the maxima 5, 6, 7 span a 2-simplex\n\
elements: 0 1 2 3 4 5 6 7\n\
0 < 2\n0 < 3\n1 < 2\n1 < 3\n2 < 5\n2 < 6\n2 < 7\n3 < 5\n3 < 6\n3 < 7\n4 < 6\n4 < 7\n",
    ),
    (
        "ex1_prime.poset",
        "# ex1 without the element 4\n\
elements: 0 1 2 3 5 6 7\n\
0 < 2\n0 < 3\n1 < 2\n1 < 3\n2 < 5\n2 < 6\n2 < 7\n3 < 5\n3 < 6\n3 < 7\n",
    ),
    (
        "chain2.poset",
        "# two-element chain\nelements: 0 1\n0 < 1\n",
    ),
    ("single.poset", "# one point\nelements: a\n"),
    (
        "q3.poset",
        "# a below b and c\nelements: a b c\na < b\na < c\n",
    ),
    (
        "ex3.poset",
        "# five elements, a circle up to homotopy\n\
elements: 0 1 2 3 4\n\
0 < 2\n0 < 3\n0 < 4\n1 < 3\n1 < 4\n",
    ),
    (
        "antichain2.poset",
        "# two incomparable points\nelements: a b\n",
    ),
    (
        "two_triangles.complex",
        "# two triangles glued along an edge\nfacet: a b c\nfacet: b c d\n",
    ),
];

pub fn fixture(name: &str) -> Option<&'static str> {
    FIXTURES.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

/// Writes every fixture into `dir`, creating it if needed.
pub fn write_fixtures(dir: &Path) -> io::Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    FIXTURES
        .iter()
        .map(|(name, text)| {
            let path = dir.join(name);
            fs::write(&path, text)?;
            Ok(path)
        })
        .collect()
}
