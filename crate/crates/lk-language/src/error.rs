use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LkError {
    #[error("symbol {symbol} is outside the alphabet with {agents} agents")]
    SymbolOutOfRange { symbol: String, agents: u32 },
    #[error("agent {agent} is outside 1..={max}")]
    AgentOutOfRange { agent: u32, max: u32 },
    #[error("the promising agent and the repeated agent must differ, got {0} for both")]
    EqualAgents(u32),
    #[error("the repeated-agent block must have length at least 1")]
    EmptyBlock,
}
