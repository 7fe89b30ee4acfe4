#include <algorithm>

#include "tmis/protocol.hpp"

namespace tmis::protocol {

bool AdversaryScript::observes() const {
  return std::any_of(actions.begin(), actions.end(),
                     [](const ChannelAction& a) { return std::holds_alternative<Observe>(a); });
}

std::optional<std::size_t> Adversary::latest(std::string_view name) const {
  for (std::size_t i = observed_.size(); i-- > 0;) {
    if (observed_[i].name == name) return i;
  }
  return std::nullopt;
}

Channel::Channel(Adversary* adversary, const AdversaryScript& script, Clock& clock, Tick latency,
                 Transcript& transcript)
    : adversary_(adversary), script_(script), clock_(clock), latency_(latency), transcript_(transcript) {
  if (latency < 0) throw Error(ErrorCode::OutOfRange, "channel latency must be non-negative");
}

std::optional<Message> Channel::transmit(Message message) {
  message.sent_at = clock_.now();
  if (adversary_ != nullptr && script_.observes()) adversary_->record(message);

  ChannelEvent event = ChannelEvent::Delivered;
  for (const auto& action : script_.actions) {
    if (const auto* drop = std::get_if<Drop>(&action); drop && drop->target == message.name) {
      clock_.advance(latency_);
      transcript_.messages.push_back({std::move(message), ChannelEvent::Dropped, clock_.now()});
      return std::nullopt;
    }
    if (const auto* replay = std::get_if<Replay>(&action); replay && replay->target == message.name) {
      if (adversary_ == nullptr || replay->source >= adversary_->observed().size()) {
        throw Error(ErrorCode::NoRecordedSession, "replay source was never observed");
      }
      Message stale = adversary_->observed()[replay->source];
      if (replay->refresh_field) stale.set(*replay->refresh_field, BigInt(clock_.now()));
      stale.sent_at = clock_.now();
      message = std::move(stale);
      event = ChannelEvent::Replayed;
    } else if (const auto* replace = std::get_if<Replace>(&action); replace && replace->target == message.name) {
      FieldValue rewritten = replace->transform(message.value(replace->field), message);
      message.set(replace->field, std::move(rewritten));
      if (event == ChannelEvent::Delivered) event = ChannelEvent::Replaced;
    } else if (const auto* inject = std::get_if<Inject>(&action); inject && inject->target == message.name) {
      message = inject->message;
      message.sent_at = clock_.now();
      event = ChannelEvent::Injected;
    }
  }

  clock_.advance(latency_);
  transcript_.messages.push_back({message, event, clock_.now()});
  return message;
}

}  // namespace tmis::protocol
