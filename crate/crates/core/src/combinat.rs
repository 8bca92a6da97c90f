//! Small enumeration helpers shared by the diagram modules and the oracles.

/// All set partitions of `items`; blocks keep the input order and are listed by first element.
pub fn set_partitions<T: Clone>(items: &[T]) -> Vec<Vec<Vec<T>>> {
    let mut out = Vec::new();
    let mut current: Vec<Vec<T>> = Vec::new();
    fn rec<T: Clone>(items: &[T], k: usize, current: &mut Vec<Vec<T>>, out: &mut Vec<Vec<Vec<T>>>) {
        if k == items.len() {
            out.push(current.clone());
            return;
        }
        for b in 0..current.len() {
            current[b].push(items[k].clone());
            rec(items, k + 1, current, out);
            current[b].pop();
        }
        current.push(vec![items[k].clone()]);
        rec(items, k + 1, current, out);
        current.pop();
    }
    rec(items, 0, &mut current, &mut out);
    out
}

/// All perfect matchings of `items` as lists of pairs.
pub fn perfect_matchings<T: Clone>(items: &[T]) -> Vec<Vec<(T, T)>> {
    if items.is_empty() {
        return vec![vec![]];
    }
    if items.len() % 2 == 1 {
        return vec![];
    }
    let first = &items[0];
    let mut out = Vec::new();
    for j in 1..items.len() {
        let rest: Vec<T> = items[1..]
            .iter()
            .enumerate()
            .filter(|&(k, _)| k + 1 != j)
            .map(|(_, x)| x.clone())
            .collect();
        for mut m in perfect_matchings(&rest) {
            m.insert(0, (first.clone(), items[j].clone()));
            out.push(m);
        }
    }
    out
}

/// All involutions of `0..k` (fixed points allowed) as mate vectors.
pub fn involutions(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut mate: Vec<Option<usize>> = vec![None; k];
    fn rec(mate: &mut Vec<Option<usize>>, out: &mut Vec<Vec<usize>>) {
        let Some(i) = mate.iter().position(Option::is_none) else {
            out.push(mate.iter().map(|m| m.unwrap()).collect());
            return;
        };
        mate[i] = Some(i);
        rec(mate, out);
        for j in i + 1..mate.len() {
            if mate[j].is_none() {
                mate[i] = Some(j);
                mate[j] = Some(i);
                rec(mate, out);
                mate[j] = None;
            }
        }
        mate[i] = None;
    }
    rec(&mut mate, &mut out);
    out
}
