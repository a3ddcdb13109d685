use super::{bits, Graph};

impl Graph {
    /// All maximal cliques as bitmasks (Bron–Kerbosch with pivoting).
    /// Isolated vertices appear as singleton cliques.
    pub fn maximal_cliques(&self) -> Vec<u64> {
        let mut out = Vec::new();
        self.bron_kerbosch(0, self.vertex_mask(), 0, &mut out);
        out.sort_unstable();
        out
    }

    fn bron_kerbosch(&self, r: u64, mut p: u64, mut x: u64, out: &mut Vec<u64>) {
        if p == 0 {
            if x == 0 {
                out.push(r);
            }
            return;
        }
        let pivot = bits(p | x)
            .max_by_key(|&u| (self.neighbor_mask(u) & p).count_ones())
            .unwrap();
        for v in bits(p & !self.neighbor_mask(pivot)) {
            let nb = self.neighbor_mask(v);
            self.bron_kerbosch(r | (1 << v), p & nb, x & nb, out);
            p &= !(1 << v);
            x |= 1 << v;
        }
    }
}
