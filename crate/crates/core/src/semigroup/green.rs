use std::fmt::Write as _;

use serde::Serialize;

use super::FinSemigroup;
use crate::algebra::Partition;

type Bits = Vec<u64>;

fn bits_new(m: usize) -> Bits {
    vec![0; m.div_ceil(64)]
}

fn bit_set(b: &mut Bits, i: usize) {
    b[i / 64] |= 1 << (i % 64);
}

fn subset(a: &Bits, b: &Bits) -> bool {
    a.iter().zip(b).all(|(x, y)| x & !y == 0)
}

/// One D-class laid out as a grid: rows are R-classes, columns L-classes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DClass {
    pub elements: Vec<usize>,
    pub r_classes: Vec<Vec<usize>>,
    pub l_classes: Vec<Vec<usize>>,
    /// `cells[i][j]` is the H-class in row `i`, column `j` (possibly empty
    /// only if the semigroup is infinite, so never here).
    pub cells: Vec<Vec<Vec<usize>>>,
    /// `group_cells[i][j]` holds when that H-class contains an idempotent.
    pub group_cells: Vec<Vec<bool>>,
    pub regular: bool,
}

/// Green's relations of a finite semigroup with the D-class grids and the
/// Hasse diagrams of the R-, L- and D-orders.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EggBox {
    #[serde(skip)]
    pub r: Partition,
    #[serde(skip)]
    pub l: Partition,
    #[serde(skip)]
    pub h: Partition,
    #[serde(skip)]
    pub d: Partition,
    pub d_classes: Vec<DClass>,
    /// `(lower, upper)` pairs of D-class indices.
    pub d_covers: Vec<(usize, usize)>,
    /// `(lower, upper)` pairs of R-class indices (indices of `r.classes()`).
    pub r_covers: Vec<(usize, usize)>,
    pub l_covers: Vec<(usize, usize)>,
}

/// Hasse diagram of the preorder `i ≤ j` iff `sets[i] ⊆ sets[j]`, on classes
/// given by their representatives.
fn covers(reps: &[usize], sets: &[Bits]) -> Vec<(usize, usize)> {
    let k = reps.len();
    let le = |i: usize, j: usize| subset(&sets[reps[i]], &sets[reps[j]]);
    let mut out = Vec::new();
    for i in 0..k {
        for j in 0..k {
            if i == j || !le(i, j) {
                continue;
            }
            let between = (0..k).any(|z| z != i && z != j && le(i, z) && le(z, j));
            if !between {
                out.push((i, j));
            }
        }
    }
    out
}

impl EggBox {
    pub fn compute(s: &FinSemigroup) -> EggBox {
        let m = s.order();
        let mut right: Vec<Bits> = Vec::with_capacity(m);
        let mut left: Vec<Bits> = Vec::with_capacity(m);
        for a in 0..m {
            let mut r = bits_new(m);
            let mut l = bits_new(m);
            bit_set(&mut r, a);
            bit_set(&mut l, a);
            for x in 0..m {
                bit_set(&mut r, s.mul(a, x));
                bit_set(&mut l, s.mul(x, a));
            }
            right.push(r);
            left.push(l);
        }
        let two_sided: Vec<Bits> = (0..m)
            .map(|a| {
                let mut j = bits_new(m);
                for x in 0..m {
                    if left[a][x / 64] >> (x % 64) & 1 == 1 {
                        for (w, v) in j.iter_mut().zip(&right[x]) {
                            *w |= v;
                        }
                    }
                }
                j
            })
            .collect();

        let r = Partition::from_key(m, |a| right[a].clone());
        let l = Partition::from_key(m, |a| left[a].clone());
        let d = Partition::from_key(m, |a| two_sided[a].clone());
        let h = r.meet(&l);

        let r_reps = r.representatives();
        let l_reps = l.representatives();
        let d_reps = d.representatives();

        let d_classes = d
            .classes()
            .into_iter()
            .map(|elements| {
                let mut r_classes: Vec<Vec<usize>> = Vec::new();
                let mut l_classes: Vec<Vec<usize>> = Vec::new();
                for cls in r.classes() {
                    if d.same(cls[0], elements[0]) {
                        r_classes.push(cls);
                    }
                }
                for cls in l.classes() {
                    if d.same(cls[0], elements[0]) {
                        l_classes.push(cls);
                    }
                }
                let cells: Vec<Vec<Vec<usize>>> = r_classes
                    .iter()
                    .map(|rc| {
                        l_classes
                            .iter()
                            .map(|lc| rc.iter().copied().filter(|x| lc.contains(x)).collect())
                            .collect()
                    })
                    .collect();
                let group_cells: Vec<Vec<bool>> = cells
                    .iter()
                    .map(|row| row.iter().map(|c| c.iter().any(|&x| s.is_idempotent(x))).collect())
                    .collect();
                let regular = elements.iter().any(|&x| s.is_idempotent(x));
                DClass {
                    elements,
                    r_classes,
                    l_classes,
                    cells,
                    group_cells,
                    regular,
                }
            })
            .collect();

        EggBox {
            d_covers: covers(&d_reps, &two_sided),
            r_covers: covers(&r_reps, &right),
            l_covers: covers(&l_reps, &left),
            r,
            l,
            h,
            d,
            d_classes,
        }
    }

    /// Group H-classes, each listed by its elements.
    pub fn group_h_classes(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for dc in &self.d_classes {
            for (row, flags) in dc.cells.iter().zip(&dc.group_cells) {
                for (cell, &g) in row.iter().zip(flags) {
                    if g {
                        out.push(cell.clone());
                    }
                }
            }
        }
        out
    }

    /// Graphviz rendering: one cluster per D-class holding its grid of
    /// H-cells, group H-classes drawn with a double border, and edges for the
    /// D-order covers (upper to lower).
    pub fn to_dot(&self, s: &FinSemigroup) -> String {
        let mut out = String::from("digraph eggbox {\n  compound=true;\n  node [shape=box, fontname=\"monospace\"];\n");
        for (di, dc) in self.d_classes.iter().enumerate() {
            let _ = writeln!(out, "  subgraph cluster_d{di} {{");
            let _ = writeln!(out, "    label=\"D{di} ({} elements)\";", dc.elements.len());
            for (ri, row) in dc.cells.iter().enumerate() {
                let mut ids = Vec::new();
                for (ci, cell) in row.iter().enumerate() {
                    let id = format!("d{di}_r{ri}_c{ci}");
                    let label: Vec<String> = cell.iter().map(|&x| s.name(x)).collect();
                    let label = label.join(" ").replace('"', "\\\"");
                    let per = if dc.group_cells[ri][ci] { ", peripheries=2" } else { "" };
                    let _ = writeln!(out, "    {id} [label=\"{label}\"{per}];");
                    ids.push(id);
                }
                let _ = writeln!(out, "    {{ rank=same; {} }}", ids.join("; "));
                for pair in ids.windows(2) {
                    let _ = writeln!(out, "    {} -> {} [style=invis];", pair[0], pair[1]);
                }
            }
            for ri in 1..dc.cells.len() {
                let _ = writeln!(out, "    d{di}_r{}_c0 -> d{di}_r{ri}_c0 [style=invis];", ri - 1);
            }
            let _ = writeln!(out, "  }}");
        }
        for &(lower, upper) in &self.d_covers {
            let _ = writeln!(
                out,
                "  d{upper}_r0_c0 -> d{lower}_r0_c0 [ltail=cluster_d{upper}, lhead=cluster_d{lower}];"
            );
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::RunConfig;
    use crate::semigroup::{full_transformation_monoid, null_semigroup, right_zero};

    #[test]
    fn t3_eggbox() {
        let t3 = full_transformation_monoid(3, &RunConfig::default()).unwrap();
        let eb = EggBox::compute(&t3);
        let mut sizes: Vec<usize> = eb.d_classes.iter().map(|d| d.elements.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![3, 6, 18]);
        // D-order is a chain of three classes
        assert_eq!(eb.d_covers.len(), 2);
        let rank2 = eb.d_classes.iter().find(|d| d.elements.len() == 18).unwrap();
        assert_eq!((rank2.r_classes.len(), rank2.l_classes.len()), (3, 3));
        // every D-class of T_n is regular
        assert!(eb.d_classes.iter().all(|d| d.regular));
        assert!(eb.d.refines(&Partition::universal(27)));
        let dot = eb.to_dot(&t3);
        assert_eq!(dot.matches("subgraph cluster_").count(), 3);
        assert!(dot.contains("peripheries=2"));
    }

    #[test]
    fn degenerate_eggboxes() {
        let rz = right_zero(4).unwrap();
        let eb = EggBox::compute(&rz);
        assert_eq!(eb.d_classes.len(), 1);
        assert_eq!(eb.d_classes[0].r_classes.len(), 1);
        assert_eq!(eb.d_classes[0].l_classes.len(), 4);

        let z = null_semigroup(3).unwrap();
        let eb = EggBox::compute(&z);
        assert_eq!(eb.d_classes.len(), 3);
        assert_eq!(eb.group_h_classes(), vec![vec![0]]);
        assert_eq!(eb.d_covers.len(), 2);
    }
}
