//! The typed entity graph connecting records through shared entities,
//! hashtags and keywords, plus simple-path search between users.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{CurationRecord, PipelineError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NodeType {
    Tweet,
    User,
    Entity,
    Hashtag,
    Keyword,
}

impl NodeType {
    fn prefix(&self) -> &'static str {
        match self {
            NodeType::Tweet => "tweet",
            NodeType::User => "user",
            NodeType::Entity => "entity",
            NodeType::Hashtag => "hashtag",
            NodeType::Keyword => "keyword",
        }
    }
}

impl fmt::Display for NodeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.prefix())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeType {
    Posted,
    Mentions,
    Tagged,
    HasKeyword,
}

impl fmt::Display for EdgeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            EdgeType::Posted => "posted",
            EdgeType::Mentions => "mentions",
            EdgeType::Tagged => "tagged",
            EdgeType::HasKeyword => "has_keyword",
        };
        f.write_str(name)
    }
}

/// A node, keyed globally as `type:value`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphNode {
    pub node_type: NodeType,
    pub value: String,
}

impl GraphNode {
    pub fn key(&self) -> String {
        format!("{}:{}", self.node_type.prefix(), self.value)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphEdge {
    pub from: String,
    pub to: String,
    pub edge_type: EdgeType,
}

/// Nodes unique per (type, value); adjacency is undirected for traversal.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct EntityGraph {
    nodes: BTreeMap<String, GraphNode>,
    edges: Vec<GraphEdge>,
    adjacency: BTreeMap<String, BTreeSet<String>>,
}

impl EntityGraph {
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_node(&self, key: &str) -> bool {
        self.nodes.contains_key(key)
    }

    pub fn nodes(&self) -> impl Iterator<Item = &GraphNode> {
        self.nodes.values()
    }

    pub fn edges(&self) -> &[GraphEdge] {
        &self.edges
    }

    pub fn neighbors(&self, key: &str) -> impl Iterator<Item = &str> {
        self.adjacency
            .get(key)
            .into_iter()
            .flat_map(|set| set.iter().map(String::as_str))
    }

    fn add_node(&mut self, node_type: NodeType, value: impl Into<String>) -> String {
        let node = GraphNode {
            node_type,
            value: value.into(),
        };
        let key = node.key();
        self.nodes.entry(key.clone()).or_insert(node);
        key
    }

    fn add_edge(&mut self, from: &str, to: &str, edge_type: EdgeType) {
        let exists = self
            .edges
            .iter()
            .any(|e| e.from == from && e.to == to && e.edge_type == edge_type);
        if !exists {
            self.edges.push(GraphEdge {
                from: from.to_string(),
                to: to.to_string(),
                edge_type,
            });
        }
        self.adjacency
            .entry(from.to_string())
            .or_default()
            .insert(to.to_string());
        self.adjacency
            .entry(to.to_string())
            .or_default()
            .insert(from.to_string());
    }
}

/// How many keywords of each record enter the graph.
const KEYWORDS_PER_RECORD: usize = 5;

/// Build the graph: per record a user node with a posted edge to the
/// tweet node; entity nodes keyed by lowercase surface and type; hashtag
/// nodes (lowercased, `#` stripped); nodes for the top keywords. Shared
/// values connect tweets across records.
pub fn build_graph(records: &[CurationRecord]) -> EntityGraph {
    let mut graph = EntityGraph::default();
    for record in records {
        let tweet_key = graph.add_node(NodeType::Tweet, record.tweet.id.clone());
        if !record.tweet.user.handle.is_empty() {
            let user_key = graph.add_node(NodeType::User, record.tweet.user.handle.clone());
            graph.add_edge(&user_key, &tweet_key, EdgeType::Posted);
        }
        for entity in &record.entities {
            let value = format!("{}|{}", entity.word.to_lowercase(), entity.ner);
            let key = graph.add_node(NodeType::Entity, value);
            graph.add_edge(&tweet_key, &key, EdgeType::Mentions);
        }
        for hashtag in &record.tweet.hashtags {
            let normalized = hashtag.trim_start_matches('#').to_lowercase();
            if normalized.is_empty() {
                continue;
            }
            let key = graph.add_node(NodeType::Hashtag, normalized);
            graph.add_edge(&tweet_key, &key, EdgeType::Tagged);
        }
        for keyword in record.keywords.iter().take(KEYWORDS_PER_RECORD) {
            let key = graph.add_node(NodeType::Keyword, keyword.term.clone());
            graph.add_edge(&tweet_key, &key, EdgeType::HasKeyword);
        }
    }
    graph
}

/// All simple paths between two users, at most `max_len` edges long,
/// shortest first, ties ordered by the node-key sequence. Paths are lists
/// of node keys (`user:u1`, `tweet:t1`, ...).
pub fn find_paths(
    graph: &EntityGraph,
    from_user: &str,
    to_user: &str,
    max_len: usize,
) -> Result<Vec<Vec<String>>, PipelineError> {
    let from = GraphNode {
        node_type: NodeType::User,
        value: from_user.to_string(),
    }
    .key();
    let to = GraphNode {
        node_type: NodeType::User,
        value: to_user.to_string(),
    }
    .key();
    for key in [&from, &to] {
        if !graph.has_node(key) {
            return Err(PipelineError::UnknownUser(key.clone()));
        }
    }
    let mut paths = Vec::new();
    let mut current = vec![from.clone()];
    dfs(graph, &to, max_len, &mut current, &mut paths);
    paths.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    Ok(paths)
}

fn dfs(
    graph: &EntityGraph,
    target: &str,
    max_len: usize,
    current: &mut Vec<String>,
    paths: &mut Vec<Vec<String>>,
) {
    let last = current.last().expect("path never empty").clone();
    if last == *target {
        paths.push(current.clone());
        return;
    }
    if current.len() > max_len {
        return;
    }
    let next_keys: Vec<String> = graph.neighbors(&last).map(str::to_string).collect();
    for next in next_keys {
        if current.contains(&next) {
            continue;
        }
        current.push(next);
        dfs(graph, target, max_len, current, paths);
        current.pop();
    }
}
