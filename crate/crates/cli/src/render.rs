//! Text drawings of forest diagrams.

use std::fmt::Write;

use thompson_core::{ForestDiagram, PointedForest, Tree};

const SPACING: usize = 4;

struct Canvas {
    rows: Vec<Vec<char>>,
}

impl Canvas {
    fn new(height: usize, width: usize) -> Canvas {
        Canvas { rows: vec![vec![' '; width]; height] }
    }

    fn put(&mut self, row: usize, col: usize, c: char) {
        self.rows[row][col] = c;
    }

    fn lines(&self) -> Vec<String> {
        self.rows.iter().map(|r| r.iter().collect::<String>().trim_end().to_string()).collect()
    }
}

/// Draw `t` with its leaves starting at column `first_leaf * SPACING`.
/// Row 0 is the leaf row; row `k` holds carets of height `k`. Returns the
/// node's column.
fn draw_tree(t: &Tree, first_leaf: usize, canvas: &mut Canvas) -> usize {
    match t {
        Tree::Leaf => first_leaf * SPACING,
        Tree::Caret(l, r) => {
            let lc = draw_tree(l, first_leaf, canvas);
            let rc = draw_tree(r, first_leaf + l.leaf_count(), canvas);
            let row = t.height();
            let mid = (lc + rc) / 2;
            for col in lc + 1..rc {
                canvas.put(row, col, '─');
            }
            canvas.put(row, lc, '┌');
            canvas.put(row, rc, '┐');
            canvas.put(row, mid, '┴');
            for (child, col) in [(l, lc), (r, rc)] {
                for r in child.height() + 1..row {
                    canvas.put(r, col, '│');
                }
                if child.is_trivial() && row > 1 {
                    canvas.put(1, col, '│');
                }
            }
            mid
        }
    }
}

/// Rows of one forest, leaf row last, with a `v` over the pointed root.
fn forest_rows(forest: &PointedForest, width: usize) -> Vec<String> {
    let carets = forest.trees().iter().map(Tree::height).max().unwrap_or(0);
    let height = carets.max(forest.pointed_tree().height() + 1);
    let mut canvas = Canvas::new(height + 1, width);
    let starts = forest.tree_starts();
    for (i, t) in forest.trees().iter().enumerate() {
        let root = draw_tree(t, starts[i], &mut canvas);
        if i == forest.pointer() {
            canvas.put(t.height() + 1, root, 'v');
        }
    }
    let mut lines = canvas.lines();
    lines.remove(0);
    lines.reverse();
    lines
}

fn flip(line: &str) -> String {
    line.chars()
        .map(|c| match c {
            '┌' => '└',
            '┐' => '┘',
            '┴' => '┬',
            'v' => '^',
            other => other,
        })
        .collect()
}

/// Box-drawing picture: top forest above the shared leaf row, bottom forest
/// mirrored below it. Pointed roots carry `v` and `^`.
pub fn ascii(v: &ForestDiagram) -> String {
    let leaves = v.leaf_count();
    let width = (leaves.max(1) - 1) * SPACING + 1;
    let mut out = String::new();
    for line in forest_rows(v.top(), width) {
        writeln!(out, "{line}").unwrap();
    }
    let dots: String = (0..leaves).map(|_| format!("{:<SPACING$}", "•")).collect();
    writeln!(out, "{}", dots.trim_end()).unwrap();
    for line in forest_rows(v.bottom(), width).iter().rev() {
        writeln!(out, "{}", flip(line)).unwrap();
    }
    out
}

struct DotWriter<'a> {
    prefix: &'a str,
    upward: bool,
    leaf: usize,
    next_id: usize,
    out: String,
}

impl DotWriter<'_> {
    fn edge(&mut self, parent: &str, child: &str, extra: &str) {
        if self.upward {
            writeln!(self.out, "  {child} -> {parent} [dir=back{extra}];").unwrap();
        } else if extra.is_empty() {
            writeln!(self.out, "  {parent} -> {child};").unwrap();
        } else {
            writeln!(self.out, "  {parent} -> {child} [{}];", extra.trim_start_matches(", ")).unwrap();
        }
    }

    fn tree(&mut self, t: &Tree) -> String {
        match t {
            Tree::Leaf => {
                self.leaf += 1;
                format!("leaf{}", self.leaf - 1)
            }
            Tree::Caret(l, r) => {
                let name = format!("{}{}", self.prefix, self.next_id);
                self.next_id += 1;
                writeln!(self.out, "  {name} [shape=point];").unwrap();
                for child in [l, r] {
                    let c = self.tree(child);
                    self.edge(&name, &c, "");
                }
                name
            }
        }
    }
}

/// Graphviz source. Top carets hang above the shared leaves, bottom carets
/// below them; each pointed root gets a dashed edge from a pointer box.
pub fn dot(v: &ForestDiagram) -> String {
    let mut out = String::from("digraph forest {\n  rankdir=TB;\n  { rank=same;\n");
    for i in 0..v.leaf_count() {
        writeln!(out, "    leaf{i} [label=\"{i}\", shape=circle];").unwrap();
    }
    out.push_str("  }\n");
    for (prefix, forest, upward) in [("t", v.top(), false), ("b", v.bottom(), true)] {
        let mut w = DotWriter { prefix, upward, leaf: 0, next_id: 0, out: String::new() };
        for (i, t) in forest.trees().iter().enumerate() {
            let root = w.tree(t);
            if i == forest.pointer() {
                let ptr = format!("{prefix}ptr");
                writeln!(w.out, "  {ptr} [label=\"pointer\", shape=box];").unwrap();
                w.edge(&ptr, &root, ", style=dashed");
            }
        }
        out.push_str(&w.out);
    }
    out.push_str("}\n");
    out
}

/// Nested-parenthesis form, the same as the canonical text.
pub fn parens(v: &ForestDiagram) -> String {
    format!("top:    {}\nbottom: {}\n", v.top(), v.bottom())
}
