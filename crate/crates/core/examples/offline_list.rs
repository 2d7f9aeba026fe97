//! Off-line list maintenance: the whole script of insertions and order
//! queries is handed over at once and executed in linear time.

use domcert::offline_list::{run_script, ListScript, Test};

fn main() {
    let mut s = ListScript::new(5);
    s.insert(0)
        .insert_rel(1, 0, Test::Const(true)) // 0 1
        .insert_rel(2, 0, Test::Const(false)) // 2 0 1
        .after(1, 2)
        .insert_rel(3, 1, Test::After(2, 1)) // 2 0 3 1
        .after(3, 0)
        .insert(4); // 4 2 0 3 1
    let res = run_script(&s).unwrap();
    let mut order: Vec<usize> = (0..5).collect();
    order.sort_by_key(|&x| res.rank[x]);
    println!("final order {order:?}");
    println!("answers {:?}", res.answers);
}
