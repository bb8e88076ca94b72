mod common;

use common::{fixtures, random_instance, rng, Instance};
use hiders::equilibria::{is_k_strong, is_ne, is_pane};
use hiders::oracle::enumerate_feasible_graphs;
use hiders::{EdgeSet, Network};

fn to_network(inst: &Instance, edges: &[(usize, usize)]) -> Network {
    let set = EdgeSet::from_edges(inst.nodes(), edges.iter().map(|&(a, b)| hiders::Edge::new(a, b)));
    Network::from_edge_sets(inst.game.players(), inst.nonplayers, &inst.original, &set).unwrap()
}

/// Library enumeration, exhaustive verdicts and fast verifiers all match the reference search.
fn agree(name: &str, inst: &Instance) {
    let brute = inst.brute();
    let n = inst.game.players();
    let reference = brute.all_feasible();
    let set = enumerate_feasible_graphs(&inst.game, inst.nonplayers, &inst.original).unwrap();
    assert_eq!(set.graphs.len(), reference.len(), "{name}: feasible count");
    for &g in &reference {
        let edges = brute.edges(g);
        let net = to_network(inst, &edges);
        let fg = set.find(net.edges()).unwrap_or_else(|| panic!("{name}: {edges:?} missing from enumeration"));
        assert_eq!(fg.utilities.welfare, brute.welfare(g), "{name}: welfare of {edges:?}");
        let nash = brute.nash(g);
        assert_eq!(fg.nash, nash, "{name}: nash {edges:?}");
        assert_eq!(is_ne(&net, &inst.game).unwrap().stable, nash, "{name}: fast nash {edges:?}");
        for k in 1..=n {
            let want = brute.stable(g, k);
            assert_eq!(fg.is_strong(k), want, "{name}: k={k} {edges:?}");
            let fast = if k == 1 { is_pane(&net, &inst.game) } else { is_k_strong(&net, &inst.game, k) };
            assert_eq!(fast.unwrap().stable, want, "{name}: fast k={k} {edges:?}");
        }
    }
}

#[test]
fn fixtures_agree_with_reference() {
    for (name, inst) in fixtures() {
        if inst.variable_edges() <= 10 {
            agree(name, &inst);
        }
    }
}

#[test]
fn five_player_tiers_agree_on_named_graphs() {
    let game = hiders::instances::two_tiers();
    let inst = Instance { game: game.clone(), nonplayers: 0, original: EdgeSet::empty(5) };
    let brute = inst.brute();
    for (net, strong) in [
        (hiders::instances::two_tiers_triangle(), [true, true, true, false, false]),
        (hiders::instances::two_tiers_middle(), [true, true, false, false, false]),
        (hiders::instances::two_tiers_complete(), [true; 5]),
    ] {
        let g = brute.from_edges(net.edges().edges().map(|e| e.ends()));
        for k in 1..=5 {
            assert_eq!(brute.stable(g, k), strong[k - 1], "{:?} k={k}", net.edges());
            assert_eq!(is_k_strong(&net, &game, k).unwrap().stable, strong[k - 1]);
        }
    }
}

#[test]
fn random_instances_agree_with_reference() {
    let mut rng = rng(7);
    let mut checked = 0;
    while checked < 40 {
        let inst = random_instance(&mut rng, 4, 3);
        if inst.variable_edges() > 10 {
            continue;
        }
        agree(&format!("{inst:?}"), &inst);
        checked += 1;
    }
}

#[test]
fn small_feasible_counts() {
    use common::r;
    let two_two = Instance { game: hiders::GameSpec::new(vec![r(1, 1); 2]).unwrap(), nonplayers: 2, original: EdgeSet::empty(4) };
    assert_eq!(two_two.brute().all_feasible().len(), 46);
    let four = Instance { game: hiders::instances::four_at_three_halves(), nonplayers: 0, original: EdgeSet::empty(4) };
    assert_eq!(four.brute().all_feasible().len(), 64);
}
